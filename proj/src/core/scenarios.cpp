// core/scenarios.cpp

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

#include "core/scenarios.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <utility>
#include <vector>

#include "core/analysis.hpp"
#include "core/convolve.hpp"
#include "core/errors.hpp"
#include "core/file_util.hpp"
#include "core/rir.hpp"
#include "core/targets.hpp"

namespace revkit {

namespace {

constexpr int kFs = 16000;
constexpr double kSourceT60 = 0.7;
constexpr double kTargetT60 = 0.15;
constexpr std::uint64_t kRirSeed = 7;
constexpr std::uint64_t kCleanSeed = 11;

RoomImpulseResponse demo_rir() {
  PolackParams params;
  params.t60_s = kSourceT60;
  params.duration_s = 1.0;
  params.sample_rate_hz = kFs;
  params.seed = kRirSeed;
  return synth_polack_rir(params);
}

void write_rir_csv(const std::string& path, const Waveform& wave) {
  const std::string tmp = temp_write_name(path);
  std::ofstream f(tmp, std::ios::trunc);
  if (!f) throw IoError("cannot create CSV file: " + path);
  f << "time_s,amplitude\n";
  char line[64];
  for (std::size_t i = 0; i < wave.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.8f,%.10g\n",
                  static_cast<double>(i) / wave.sample_rate_hz, wave.samples[i]);
    f << line;
  }
  f.close();
  if (!f) {
    std::remove(tmp.c_str());
    throw IoError("short write: " + path);
  }
  commit_temp_file(tmp, path);
}

}  // namespace

void scenario_window_shapes(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const RoomImpulseResponse rir = demo_rir();

  const ShorteningWindow direct = build_window(direct_path_target(), rir);
  const ShorteningWindow early = build_window(early_target(), rir);
  const ShorteningWindow rts = build_window(rts_target(kTargetT60), rir);

  const std::string windows_path = out_dir + "/windows.csv";
  const std::string windows_tmp = temp_write_name(windows_path);
  std::ofstream f(windows_tmp, std::ios::trunc);
  if (!f) throw IoError("cannot create CSV file: " + windows_path);
  f << "time_s,direct,early,rts\n";
  char line[96];
  for (std::size_t i = 0; i < direct.values.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.8f,%.10g,%.10g,%.10g\n",
                  static_cast<double>(i) / kFs, direct.values[i],
                  early.values[i], rts.values[i]);
    f << line;
  }
  f.close();
  if (!f) {
    std::remove(windows_tmp.c_str());
    throw IoError("short write: " + windows_path);
  }
  commit_temp_file(windows_tmp, windows_path);

  write_rir_csv(out_dir + "/rir_direct.csv",
                shorten_rir(rir, direct_path_target()).wave);
  write_rir_csv(out_dir + "/rir_early.csv", shorten_rir(rir, early_target()).wave);
  write_rir_csv(out_dir + "/rir_rts.csv",
                shorten_rir(rir, rts_target(kTargetT60)).wave);
}

void scenario_edc_comparison(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const RoomImpulseResponse rir = demo_rir();
  const Waveform clean = white_noise(2 * kFs, kFs, kCleanSeed);

  std::vector<std::pair<std::string, Waveform>> entries;
  entries.emplace_back("unprocessed", convolve(clean, rir.wave));
  entries.emplace_back("direct",
                       convolve(clean, shorten_rir(rir, direct_path_target()).wave));
  entries.emplace_back("early",
                       convolve(clean, shorten_rir(rir, early_target()).wave));
  entries.emplace_back("rts",
                       convolve(clean, shorten_rir(rir, rts_target(kTargetT60)).wave));

  const EdcReport report = edc_report(entries, clean, 1.0, 1e-8);
  write_edc_report_csv(out_dir + "/edc_comparison.csv", report);
}

}  // namespace revkit
