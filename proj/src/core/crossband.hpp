// core/crossband.hpp

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

#ifndef REVKIT_CORE_CROSSBAND_HPP_
#define REVKIT_CORE_CROSSBAND_HPP_

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "core/stft.hpp"
#include "core/waveform.hpp"

namespace revkit {

// Subband filters A(k, k+d, tau) relating the STFT of a source signal to
// the STFT of that signal convolved with an impulse response:
//
//   Y(k, p) ~= sum_{d=-l..l} sum_tau A(k, k+d, tau) S(k+d, p - tau)
//
// Taps are stored bin-major, then offset d (from -l to l), then frame lag.
// Lags run from -n_acausal to n_taps - 1 - n_acausal; the window overlap of
// the STFT makes a small acausal part genuinely necessary.
struct CrossBandFilterBank {
  StftConfig config;
  int neighborhood = 0;  // l
  int n_taps = 0;
  int n_acausal = 0;
  std::size_t bins = 0;
  std::vector<std::complex<double>> taps;
  // Bins whose least-squares system was rank deficient and fell back to the
  // minimum-norm solution.
  std::vector<std::uint32_t> rank_deficient_bins;

  std::size_t tap_index(std::size_t bin, int offset, int lag) const {
    const std::size_t width = static_cast<std::size_t>(2 * neighborhood + 1);
    const std::size_t d = static_cast<std::size_t>(offset + neighborhood);
    const std::size_t t = static_cast<std::size_t>(lag + n_acausal);
    return (bin * width + d) * static_cast<std::size_t>(n_taps) + t;
  }
  std::complex<double> tap(std::size_t bin, int offset, int lag) const {
    return taps[tap_index(bin, offset, lag)];
  }
};

struct CrossbandParams {
  StftConfig stft;
  int neighborhood = 4;  // l; ignored by verify_crossband_model
  // 0 means "derive from the impulse-response length": enough lags to cover
  // the full tail as seen through the analysis window.
  int n_taps = 0;
  int n_acausal = 1;
  // 0 means the shortest probe that keeps the least-squares system
  // overdetermined by a factor of ten.
  double probe_seconds = 0.0;
  std::uint64_t seed = 0;
  // Optional ridge added to the normal-equation diagonal.
  double ridge = 0.0;
};

// Lag count that covers an impulse response of the given length plus the
// analysis window: ceil((len + window) / hop) + 1.
int default_crossband_taps(std::size_t rir_length, const StftConfig& cfg);

// Shortest probe duration for which the per-bin least-squares system has at
// least ten rows per unknown.
double min_probe_seconds(const StftConfig& cfg, int neighborhood, int n_taps,
                         int sample_rate_hz);

// Identifies the filter bank from a seeded white-noise probe played through
// the impulse response.  Throws std::invalid_argument when the probe is too
// short for the requested tap count and neighborhood.
CrossBandFilterBank identify_crossband_filters(const Waveform& rir,
                                               const CrossbandParams& params);

struct CrossbandVerifyReport {
  std::vector<int> l_values;
  // Relative reconstruction error per l on the held-out signal:
  // 10 log10(sum |Y - Yhat|^2 / sum |Y|^2), floored at -300 dB.
  std::vector<double> error_db;
};

// Identifies filters on a probe at the largest requested neighborhood, then
// reconstructs the held-out test signal's output with each smaller
// neighborhood and reports the relative error.  The test signal must be
// distinct from the probe for the numbers to mean anything; it only needs
// to share the impulse response's sample rate.
CrossbandVerifyReport verify_crossband_model(const Waveform& rir,
                                             const CrossbandParams& params,
                                             const std::vector<int>& l_values,
                                             const Waveform& test_signal);

// Two-column CSV: l,error_db.
void write_crossband_report_csv(const std::string& path,
                                const CrossbandVerifyReport& report);

// Binary container: "RKCB" magic, version, shape fields, then the taps as
// little-endian complex64.  Tap precision is reduced to float on save.
void save_filter_bank(const std::string& path, const CrossBandFilterBank& bank);
CrossBandFilterBank load_filter_bank(const std::string& path);

}  // namespace revkit

#endif  // REVKIT_CORE_CROSSBAND_HPP_
