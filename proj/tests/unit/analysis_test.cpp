// tests/unit/analysis_test.cpp

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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <doctest.h>

#include "core/analysis.hpp"
#include "core/convolve.hpp"
#include "core/rir.hpp"
#include "core/waveform.hpp"
#include "test_util.hpp"

using namespace revkit;

TEST_CASE("spectral division recovers the response that made the signal") {
  const Waveform clean = white_noise(16000, 16000, 5);
  PolackParams p;
  p.t60_s = 0.4;
  p.duration_s = 0.5;
  p.seed = 8;
  const RoomImpulseResponse rir = synth_polack_rir(p);
  const Waveform enhanced = convolve(clean, rir.wave);

  const Waveform recovered = remaining_rir(enhanced, clean, 1e-8, 1.0);
  REQUIRE(recovered.size() == 16000);

  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < rir.wave.size(); ++i) {
    const double d = recovered.samples[i] - rir.wave.samples[i];
    num += d * d;
    den += rir.wave.samples[i] * rir.wave.samples[i];
  }
  CHECK(std::sqrt(num / den) < 1e-3);

  // Beyond the true response there is only numerical residue.
  double tail = 0.0;
  for (std::size_t i = rir.wave.size(); i < recovered.size(); ++i) {
    tail += recovered.samples[i] * recovered.samples[i];
  }
  CHECK(tail / den < 1e-6);
}

TEST_CASE("requested response length fixes the output sample count") {
  const Waveform clean = white_noise(4000, 16000, 1);
  const Waveform enhanced = convolve(clean, white_noise(100, 16000, 2));
  CHECK(remaining_rir(enhanced, clean, 1e-8, 0.25).size() == 4000);
  CHECK(remaining_rir(enhanced, clean, 1e-8, 2.0).size() == 32000);
}

TEST_CASE("spectral division validates its inputs") {
  const Waveform clean = white_noise(1000, 16000, 1);
  const Waveform enhanced = white_noise(1000, 16000, 2);
  Waveform other_rate = clean;
  other_rate.sample_rate_hz = 8000;
  CHECK_THROWS_AS(remaining_rir(enhanced, other_rate, 1e-8, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(remaining_rir(enhanced, clean, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(remaining_rir(enhanced, clean, 1e-8, 0.0),
                  std::invalid_argument);
  Waveform silence{std::vector<double>(1000, 0.0), 16000};
  CHECK_THROWS_AS(remaining_rir(enhanced, silence, 1e-8, 1.0),
                  std::invalid_argument);
}

TEST_CASE("decay reports keep column order and share one time axis") {
  const Waveform clean = white_noise(8000, 16000, 3);
  PolackParams p;
  p.t60_s = 0.3;
  p.duration_s = 0.4;
  p.seed = 4;
  const RoomImpulseResponse rir = synth_polack_rir(p);

  std::vector<std::pair<std::string, Waveform>> entries;
  entries.emplace_back("wet", convolve(clean, rir.wave));
  Waveform short_rir = rir.wave;
  short_rir.samples.resize(800);
  entries.emplace_back("dryish", convolve(clean, short_rir));

  const EdcReport report = edc_report(entries, clean, 0.5, 1e-8);
  REQUIRE(report.names.size() == 2);
  CHECK(report.names[0] == "wet");
  CHECK(report.names[1] == "dryish");
  REQUIRE(report.columns_db.size() == 2);
  CHECK(report.time_s.size() == 8000);
  CHECK(report.columns_db[0].size() == 8000);
  CHECK(report.columns_db[1].size() == 8000);
  CHECK(report.time_s[1] == doctest::Approx(1.0 / 16000.0));

  for (const auto& col : report.columns_db) {
    CHECK(col.front() == doctest::Approx(0.0).epsilon(1e-9));
    for (std::size_t i = 1; i < col.size(); ++i) {
      CHECK(col[i] <= col[i - 1] + 1e-9);
    }
  }
}

TEST_CASE("column names unusable in csv are rejected") {
  const Waveform clean = white_noise(2000, 16000, 1);
  const Waveform sig = white_noise(2000, 16000, 2);
  std::vector<std::pair<std::string, Waveform>> entries;
  entries.emplace_back("a,b", sig);
  CHECK_THROWS_AS(edc_report(entries, clean, 0.1, 1e-8), std::invalid_argument);
  entries.clear();
  entries.emplace_back("", sig);
  CHECK_THROWS_AS(edc_report(entries, clean, 0.1, 1e-8), std::invalid_argument);
  entries.clear();
  CHECK_THROWS_AS(edc_report(entries, clean, 0.1, 1e-8), std::invalid_argument);
}

TEST_CASE("decay report csv carries suffixed headers and full columns") {
  revkit_test::TempDir tmp;
  const Waveform clean = white_noise(3000, 16000, 6);
  std::vector<std::pair<std::string, Waveform>> entries;
  entries.emplace_back("left", convolve(clean, white_noise(50, 16000, 7)));
  entries.emplace_back("right", convolve(clean, white_noise(50, 16000, 8)));
  const EdcReport report = edc_report(entries, clean, 0.125, 1e-8);

  const std::string path = tmp.file("report.csv");
  write_edc_report_csv(path, report);
  const auto lines = revkit_test::read_lines(path);
  REQUIRE(lines.size() == report.time_s.size() + 1);
  CHECK(lines[0] == "time_s,left_db,right_db");
  // Two commas per data row: three columns.
  const std::string& row = lines[1];
  CHECK(std::count(row.begin(), row.end(), ',') == 2);
}
