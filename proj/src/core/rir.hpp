// core/rir.hpp

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

#ifndef REVKIT_CORE_RIR_HPP_
#define REVKIT_CORE_RIR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/waveform.hpp"

namespace revkit {

// Exponential decay rate of a reverberant tail.  The envelope is modeled as
// 10^(-p n), so the time to fall by 60 dB is t60 = 3 / (p * fs); both views
// of the same quantity are kept together.
struct DecayEstimate {
  double t60_s = 0.0;
  double decay_exponent = 0.0;  // p, per-sample base-10 exponent
};

struct RoomImpulseResponse {
  Waveform wave;
  // First sample index after the direct-path segment.
  std::size_t direct_path_end_index = 0;
  std::optional<DecayEstimate> decay;
};

struct PolackParams {
  double t60_s = 0.5;
  double duration_s = 1.0;
  int sample_rate_hz = 16000;
  // Ratio of direct-impulse energy to tail energy, in dB.  +infinity
  // produces a pure impulse with no tail.
  double direct_to_reverberant_db = 0.0;
  double onset_s = 0.0;
  std::uint64_t seed = 0;
};

// Synthesizes a statistical RIR: a unit impulse at the onset, a short gap,
// then Gaussian noise under an exponentially decaying envelope whose rate
// matches the requested t60.  Deterministic for a given seed.
RoomImpulseResponse synth_polack_rir(const PolackParams& params);

// Locates the end of the direct path: the earliest peak of |a(n)| plus a
// safety margin, clamped to the last sample.
std::size_t detect_direct_path(const Waveform& rir, double margin_s = 0.002);

// Wraps a measured RIR, running direct-path detection.  No decay estimate
// is attached; call estimate_t60 for that.
RoomImpulseResponse rir_from_waveform(const Waveform& wave,
                                      double margin_s = 0.002);

struct EnergyDecayCurve {
  std::vector<double> values_db;
  int sample_rate_hz = 0;
};

// Schroeder energy decay curve: backward cumulative energy in dB,
// normalized to 0 dB at the first sample and floored at -120 dB.
EnergyDecayCurve edc(const Waveform& rir);

struct FitRangeDb {
  double upper = -5.0;
  double lower = -25.0;
};

// Fits a line to the EDC segment inside the fit range and extrapolates the
// slope to -60 dB.  Insensitive to overall gain and to the height of the
// direct-path step.  Throws revkit::Error when the curve never decays to
// the lower bound.
DecayEstimate estimate_t60(const EnergyDecayCurve& curve,
                           FitRangeDb fit = FitRangeDb{});
DecayEstimate estimate_t60(const Waveform& rir, FitRangeDb fit = FitRangeDb{});

// Two-column CSV: time_s,edc_db.
void write_edc_csv(const std::string& path, const EnergyDecayCurve& curve);

}  // namespace revkit

#endif  // REVKIT_CORE_RIR_HPP_
