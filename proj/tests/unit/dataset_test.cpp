// tests/unit/dataset_test.cpp

// Copyright 2026  The revkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "core/dataset.hpp"
#include "core/errors.hpp"
#include "core/rir.hpp"
#include "core/scenarios.hpp"
#include "core/targets.hpp"
#include "core/wav_io.hpp"
#include "core/waveform.hpp"
#include "test_util.hpp"

using namespace revkit;
using revkit_test::TempDir;

namespace {

void put_u32(std::string& s, std::uint32_t v) {
  s.append(reinterpret_cast<const char*>(&v), 4);
}
void put_u16(std::string& s, std::uint16_t v) {
  s.append(reinterpret_cast<const char*>(&v), 2);
}

// Hand-rolled two-channel 16-bit WAV with the given interleaved samples.
std::string stereo_wav_bytes(const std::vector<std::int16_t>& interleaved,
                             std::uint32_t rate) {
  std::string data;
  for (std::int16_t v : interleaved) {
    data.append(reinterpret_cast<const char*>(&v), 2);
  }
  std::string s;
  s += "RIFF";
  put_u32(s, static_cast<std::uint32_t>(36 + data.size()));
  s += "WAVEfmt ";
  put_u32(s, 16);
  put_u16(s, 1);  // PCM
  put_u16(s, 2);  // channels
  put_u32(s, rate);
  put_u32(s, rate * 4);  // byte rate
  put_u16(s, 4);         // block align
  put_u16(s, 16);        // bits
  s += "data";
  put_u32(s, static_cast<std::uint32_t>(data.size()));
  s += data;
  return s;
}

std::string write_wav_fixture(const TempDir& tmp, const std::string& name,
                              const Waveform& w, WavFormat format) {
  const std::string path = tmp.file(name);
  write_wav(path, w, format);
  return path;
}

nlohmann::json base_entry(const std::string& clean, const std::string& rir) {
  nlohmann::json e;
  e["clean_path"] = clean;
  e["rir_path"] = rir;
  e["target"] = {{"kind", "direct"}};
  return e;
}

std::string dump_manifest(const TempDir& tmp, const nlohmann::json& doc) {
  const std::string path = tmp.file("manifest.json");
  std::ofstream f(path);
  f << doc.dump(2);
  return path;
}

}  // namespace

TEST_CASE("wav files round trip in both sample formats") {
  TempDir tmp;
  const Waveform w = white_noise(2000, 22050, 3);

  const std::string f32 = write_wav_fixture(tmp, "f32.wav", w, WavFormat::kFloat32);
  const Waveform back32 = read_wav(f32);
  REQUIRE(back32.size() == w.size());
  CHECK(back32.sample_rate_hz == 22050);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(back32.samples[i] == doctest::Approx(w.samples[i]).epsilon(1e-6));
  }

  Waveform clipped = w;
  for (double& v : clipped.samples) v = std::max(-1.0, std::min(1.0, v * 0.25));
  const std::string p16 = write_wav_fixture(tmp, "p16.wav", clipped, WavFormat::kPcm16);
  const Waveform back16 = read_wav(p16);
  REQUIRE(back16.size() == clipped.size());
  for (std::size_t i = 0; i < clipped.size(); ++i) {
    CHECK(std::abs(back16.samples[i] - clipped.samples[i]) <= 1.0 / 32768.0);
  }
}

TEST_CASE("multichannel wavs expose one channel at a time") {
  TempDir tmp;
  // Left channel ramps up, right channel ramps down.
  const std::vector<std::int16_t> frames = {
      1000, -1000, 2000, -2000, 3000, -3000, 4000, -4000};
  const std::string path = tmp.file("stereo.wav");
  {
    std::ofstream f(path, std::ios::binary);
    const std::string bytes = stereo_wav_bytes(frames, 8000);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }

  const Waveform left = read_wav(path, 0);
  const Waveform right = read_wav(path, 1);
  REQUIRE(left.size() == 4);
  REQUIRE(right.size() == 4);
  CHECK(left.sample_rate_hz == 8000);
  CHECK(left.samples[0] == doctest::Approx(1000.0 / 32768.0));
  CHECK(left.samples[3] == doctest::Approx(4000.0 / 32768.0));
  CHECK(right.samples[0] == doctest::Approx(-1000.0 / 32768.0));
  CHECK_THROWS_AS(read_wav(path, 2), std::invalid_argument);
}

TEST_CASE("unreadable or non-wav files raise io errors") {
  TempDir tmp;
  CHECK_THROWS_AS(read_wav(tmp.file("missing.wav")), IoError);
  const std::string junk = tmp.file("junk.wav");
  {
    std::ofstream f(junk, std::ios::binary);
    f << "this is not audio";
  }
  CHECK_THROWS_AS(read_wav(junk), IoError);
}

TEST_CASE("manifest parsing fills defaults and validates shapes") {
  TempDir tmp;
  nlohmann::json doc = nlohmann::json::array();
  doc.push_back({{"clean_path", "c.wav"},
                 {"rir_path", "r.wav"},
                 {"noise_path", "n.wav"},
                 {"rir_channel", 1},
                 {"snr_db", 20.0},
                 {"seed", 42},
                 {"target", {{"kind", "rts"}, {"t60_target_s", 0.2}}}});
  doc.push_back({{"clean_path", "c.wav"},
                 {"rir_path", "r.wav"},
                 {"target", {{"kind", "early"}, {"early_ms", 32.0}}}});

  const auto entries = load_manifest(dump_manifest(tmp, doc));
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].rir_channel == 1);
  CHECK(entries[0].snr_db == 20.0);
  CHECK(entries[0].noise_path == "n.wav");
  REQUIRE(entries[0].seed.has_value());
  CHECK(*entries[0].seed == 42);
  CHECK(entries[0].target.kind == TargetKind::kRts);
  CHECK(entries[0].target.t60_target_s == 0.2);

  // Second entry: no snr -> noiseless, no seed -> derived later.
  CHECK(std::isinf(entries[1].snr_db));
  CHECK(!entries[1].seed.has_value());
  CHECK(entries[1].target.kind == TargetKind::kEarly);
  CHECK(entries[1].target.early_ms == 32.0);
}

TEST_CASE("malformed manifests are rejected before any processing") {
  TempDir tmp;
  const std::string bad_json = tmp.file("bad.json");
  {
    std::ofstream f(bad_json);
    f << "{ not json";
  }
  CHECK_THROWS_AS(load_manifest(bad_json), std::invalid_argument);
  CHECK_THROWS_AS(load_manifest(tmp.file("missing.json")), IoError);

  CHECK_THROWS_AS(load_manifest(dump_manifest(tmp, nlohmann::json::object())),
                  std::invalid_argument);

  nlohmann::json doc = nlohmann::json::array();
  doc.push_back({{"rir_path", "r.wav"}, {"target", {{"kind", "direct"}}}});
  CHECK_THROWS_AS(load_manifest(dump_manifest(tmp, doc)),
                  std::invalid_argument);

  doc = nlohmann::json::array();
  doc.push_back(base_entry("c.wav", "r.wav"));
  doc[0]["target"] = {{"kind", "banana"}};
  CHECK_THROWS_AS(load_manifest(dump_manifest(tmp, doc)),
                  std::invalid_argument);

  // A finite snr needs a noise path.
  doc = nlohmann::json::array();
  doc.push_back(base_entry("c.wav", "r.wav"));
  doc[0]["snr_db"] = 10.0;
  CHECK_THROWS_AS(load_manifest(dump_manifest(tmp, doc)),
                  std::invalid_argument);
}

TEST_CASE("dataset preparation writes pairs, sidecars and a faithful report") {
  TempDir tmp;
  PolackParams p;
  p.t60_s = 0.3;
  p.duration_s = 0.3;
  p.seed = 17;
  const RoomImpulseResponse rir = synth_polack_rir(p);
  const std::string clean =
      write_wav_fixture(tmp, "clean.wav", white_noise(8000, 16000, 1),
                        WavFormat::kFloat32);
  const std::string rir_path =
      write_wav_fixture(tmp, "rir.wav", rir.wave, WavFormat::kFloat32);
  const std::string noise =
      write_wav_fixture(tmp, "noise.wav", white_noise(32000, 16000, 2),
                        WavFormat::kFloat32);

  nlohmann::json doc = nlohmann::json::array();
  doc.push_back({{"clean_path", clean},
                 {"rir_path", rir_path},
                 {"noise_path", noise},
                 {"snr_db", 20.0},
                 {"target", {{"kind", "rts"}, {"t60_target_s", 0.15}}}});
  doc.push_back({{"clean_path", clean},
                 {"rir_path", rir_path},
                 {"target", {{"kind", "early"}}}});
  doc.push_back({{"clean_path", clean},
                 {"rir_path", rir_path},
                 {"noise_path", noise},
                 {"snr_db", 5.0},
                 {"seed", 7},
                 {"target", {{"kind", "direct"}}}});

  const auto entries = load_manifest(dump_manifest(tmp, doc));
  DatasetOptions options;
  options.jobs = 2;
  options.master_seed = 99;
  const std::string out_a = tmp.file("out_a");
  const DatasetReport report = prep_dataset(entries, out_a, options);
  CHECK(report.total == 3);
  CHECK(report.written == 3);
  CHECK(report.failures.empty());

  for (int i = 0; i < 3; ++i) {
    char stem[32];
    std::snprintf(stem, sizeof(stem), "pair_%05d", i);
    const std::string base = out_a + "/" + stem;
    CHECK(std::filesystem::exists(base + "_input.wav"));
    CHECK(std::filesystem::exists(base + "_target.wav"));
    CHECK(std::filesystem::exists(base + ".json"));
  }

  const auto meta =
      nlohmann::json::parse(revkit_test::read_text_file(out_a + "/pair_00000.json"));
  CHECK(meta["index"] == 0);
  CHECK(meta["snr_db"] == 20.0);
  CHECK(meta["target"]["kind"] == "rts");
  CHECK(meta["q"].get<double>() > 0.0);
  CHECK(meta["noise_gain"].get<double>() > 0.0);
  CHECK(meta["sample_rate_hz"] == 16000);

  const auto meta1 =
      nlohmann::json::parse(revkit_test::read_text_file(out_a + "/pair_00001.json"));
  CHECK(meta1["snr_db"].is_null());
  CHECK(meta1["noise_path"].is_null());
  CHECK(meta1["noise_gain"] == 0.0);

  const auto meta2 =
      nlohmann::json::parse(revkit_test::read_text_file(out_a + "/pair_00002.json"));
  CHECK(meta2["seed"] == 7);

  // A different worker count must not change a single byte.
  DatasetOptions serial = options;
  serial.jobs = 1;
  const std::string out_b = tmp.file("out_b");
  prep_dataset(entries, out_b, serial);
  for (const auto& item : std::filesystem::directory_iterator(out_a)) {
    const std::string name = item.path().filename().string();
    CHECK(revkit_test::read_text_file(out_a + "/" + name) ==
          revkit_test::read_text_file(out_b + "/" + name));
  }
}

TEST_CASE("dataset entries fail independently and are reported") {
  TempDir tmp;
  const std::string clean =
      write_wav_fixture(tmp, "clean.wav", white_noise(4000, 16000, 1),
                        WavFormat::kFloat32);
  PolackParams p;
  p.t60_s = 0.25;
  p.duration_s = 0.25;
  const std::string rir_path = write_wav_fixture(
      tmp, "rir.wav", synth_polack_rir(p).wave, WavFormat::kFloat32);

  nlohmann::json doc = nlohmann::json::array();
  doc.push_back(base_entry(clean, rir_path));
  doc.push_back(base_entry(tmp.file("nonexistent.wav"), rir_path));
  doc.push_back(base_entry(clean, rir_path));

  const auto entries = load_manifest(dump_manifest(tmp, doc));
  const DatasetReport report = prep_dataset(entries, tmp.file("out"), {});
  CHECK(report.total == 3);
  CHECK(report.written == 2);
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].find("entry 1") != std::string::npos);
  CHECK(std::filesystem::exists(tmp.file("out") + "/pair_00000_input.wav"));
  CHECK(std::filesystem::exists(tmp.file("out") + "/pair_00002_input.wav"));
  CHECK(!std::filesystem::exists(tmp.file("out") + "/pair_00001_input.wav"));
}

TEST_CASE("window-shape demo emits plottable csv with the documented shapes") {
  TempDir tmp;
  scenario_window_shapes(tmp.path());
  for (const char* name :
       {"windows.csv", "rir_direct.csv", "rir_early.csv", "rir_rts.csv"}) {
    CHECK(std::filesystem::exists(tmp.file(name)));
  }

  const auto lines = revkit_test::read_lines(tmp.file("windows.csv"));
  REQUIRE(lines.size() == 16000 + 1);
  CHECK(lines[0] == "time_s,direct,early,rts");

  // Columns: time, direct, early, rts.
  std::vector<std::array<double, 4>> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::array<double, 4> row{};
    const char* s = lines[i].c_str();
    char* end = nullptr;
    for (int c = 0; c < 4; ++c) {
      row[static_cast<std::size_t>(c)] = std::strtod(s, &end);
      s = end + 1;
    }
    rows.push_back(row);
  }

  // Rectangular windows are strictly 0/1 valued; the exponential one decays
  // tenfold every 1/q samples from the direct-path end.
  const double q = compute_q(0.7, 0.15, 16000);
  std::size_t n1 = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK((rows[i][1] == 0.0 || rows[i][1] == 1.0));
    CHECK((rows[i][2] == 0.0 || rows[i][2] == 1.0));
    if (rows[i][1] == 1.0) n1 = i;
  }
  CHECK(n1 == 32);  // 2 ms at 16 kHz with no onset delay
  const std::size_t tenth = n1 + static_cast<std::size_t>(std::llround(1.0 / q));
  CHECK(std::abs(rows[tenth][3] - 0.1) < 1e-3);
  CHECK(rows[n1][3] == 1.0);
}

TEST_CASE("decay-comparison demo produces ordered, decaying columns") {
  TempDir tmp;
  scenario_edc_comparison(tmp.path());
  const auto lines = revkit_test::read_lines(tmp.file("edc_comparison.csv"));
  REQUIRE(lines.size() == 16000 + 1);
  CHECK(lines[0] == "time_s,unprocessed_db,direct_db,early_db,rts_db");

  std::vector<std::array<double, 5>> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::array<double, 5> row{};
    const char* s = lines[i].c_str();
    char* end = nullptr;
    for (int c = 0; c < 5; ++c) {
      row[static_cast<std::size_t>(c)] = std::strtod(s, &end);
      s = end + 1;
    }
    rows.push_back(row);
  }

  auto crossing = [&](int column, double level) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][static_cast<std::size_t>(column)] <= level) {
        return static_cast<double>(i) / 16000.0;
      }
    }
    return -1.0;
  };
  // The time spent between -10 and -50 dB isolates the decay slope from the
  // direct-path energy offset: 40/60 of the reverberation time.  The
  // unprocessed curve reflects the synthetic room, the exponentially
  // shortened one the 0.15 s target.
  const double slope_unproc = crossing(1, -50.0) - crossing(1, -10.0);
  const double slope_rts = crossing(4, -50.0) - crossing(4, -10.0);
  CHECK(std::abs(slope_unproc / (0.7 * 40.0 / 60.0) - 1.0) < 0.1);
  CHECK(std::abs(slope_rts / (0.15 * 40.0 / 60.0) - 1.0) < 0.1);
  CHECK(crossing(4, -60.0) < crossing(1, -60.0) / 3.0);

  for (const auto& row : rows) {
    CHECK(row[1] >= -120.000001);
  }
}
