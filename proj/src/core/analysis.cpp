// core/analysis.cpp

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

#include "core/analysis.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/fft.hpp"
#include "core/file_util.hpp"

namespace revkit {

Waveform remaining_rir(const Waveform& enhanced, const Waveform& clean,
                       double regularization, double rir_length_s) {
  validate_waveform(enhanced, "enhanced signal");
  validate_waveform(clean, "clean signal");
  if (enhanced.sample_rate_hz != clean.sample_rate_hz) {
    throw std::invalid_argument("remaining_rir: sample rates differ");
  }
  if (regularization <= 0.0) {
    throw std::invalid_argument("remaining_rir: regularization must be positive");
  }
  if (rir_length_s <= 0.0) {
    throw std::invalid_argument("remaining_rir: rir_length_s must be positive");
  }

  const std::size_t full = enhanced.size() + clean.size() - 1;
  const std::size_t n = next_pow2(full);
  RealFft fft(n);
  std::vector<std::complex<double>> num = fft.forward(enhanced.samples);
  std::vector<std::complex<double>> den = fft.forward(clean.samples);

  double den_max = 0.0;
  for (const auto& c : den) den_max = std::max(den_max, std::abs(c));
  if (den_max <= 0.0) {
    throw std::invalid_argument("remaining_rir: clean signal has zero energy");
  }
  const double floor_mag = regularization * den_max;
  for (std::size_t k = 0; k < num.size(); ++k) {
    std::complex<double> d = den[k];
    const double mag = std::abs(d);
    if (mag < floor_mag) {
      // Keep the phase, raise the magnitude to the floor.
      d = mag > 0.0 ? d * (floor_mag / mag)
                    : std::complex<double>(floor_mag, 0.0);
    }
    num[k] /= d;
  }

  const std::vector<double> ir = fft.inverse(num);
  const auto out_len = static_cast<std::size_t>(
      std::llround(rir_length_s * enhanced.sample_rate_hz));
  if (out_len == 0) {
    throw std::invalid_argument("remaining_rir: rir_length_s too small");
  }

  Waveform out;
  out.sample_rate_hz = enhanced.sample_rate_hz;
  out.samples.assign(out_len, 0.0);
  const std::size_t copy = out_len < ir.size() ? out_len : ir.size();
  for (std::size_t i = 0; i < copy; ++i) out.samples[i] = ir[i];
  return out;
}

EdcReport edc_report(const std::vector<std::pair<std::string, Waveform>>& entries,
                     const Waveform& clean, double rir_length_s,
                     double regularization) {
  if (entries.empty()) {
    throw std::invalid_argument("edc_report: no signals given");
  }
  for (const auto& [name, wave] : entries) {
    (void)wave;
    if (name.empty() || name.find(',') != std::string::npos ||
        name.find('\n') != std::string::npos) {
      throw std::invalid_argument("edc_report: name unusable as a CSV column: '" +
                                  name + "'");
    }
  }

  EdcReport report;
  for (const auto& [name, wave] : entries) {
    const Waveform rir = remaining_rir(wave, clean, regularization, rir_length_s);
    const EnergyDecayCurve curve = edc(rir);
    report.names.push_back(name);
    report.columns_db.push_back(curve.values_db);
    if (report.time_s.empty()) {
      report.time_s.resize(curve.values_db.size());
      for (std::size_t i = 0; i < report.time_s.size(); ++i) {
        report.time_s[i] = static_cast<double>(i) / curve.sample_rate_hz;
      }
    }
  }
  return report;
}

void write_edc_report_csv(const std::string& path, const EdcReport& report) {
  if (report.names.size() != report.columns_db.size()) {
    throw std::invalid_argument("edc report: names/columns mismatch");
  }
  const std::string tmp = temp_write_name(path);
  std::ofstream f(tmp, std::ios::trunc);
  if (!f) throw IoError("cannot create CSV file: " + path);
  f << "time_s";
  for (const std::string& name : report.names) f << ',' << name << "_db";
  f << '\n';
  char cell[48];
  for (std::size_t i = 0; i < report.time_s.size(); ++i) {
    std::snprintf(cell, sizeof(cell), "%.8f", report.time_s[i]);
    f << cell;
    for (const auto& col : report.columns_db) {
      std::snprintf(cell, sizeof(cell), ",%.6f", col[i]);
      f << cell;
    }
    f << '\n';
  }
  f.close();
  if (!f) {
    std::remove(tmp.c_str());
    throw IoError("short write: " + path);
  }
  commit_temp_file(tmp, path);
}

}  // namespace revkit
