// core/targets.hpp

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

#ifndef REVKIT_CORE_TARGETS_HPP_
#define REVKIT_CORE_TARGETS_HPP_

#include <cstdint>
#include <vector>

#include "core/rir.hpp"
#include "core/stft.hpp"
#include "core/waveform.hpp"

namespace revkit {

// The three learning targets: keep only the direct path, keep the direct
// path plus a fixed span of early reflections, or shorten the reverberant
// tail to a smaller decay time with an exponential window.
enum class TargetKind {
  kDirectPath,
  kEarly,
  kRts,
};

struct TargetSpec {
  TargetKind kind = TargetKind::kDirectPath;
  double early_ms = 50.0;       // used by kEarly
  double t60_target_s = 0.15;   // used by kRts
};

TargetSpec direct_path_target();
TargetSpec early_target(double early_ms = 50.0);
TargetSpec rts_target(double t60_target_s = 0.15);

// Per-sample gain applied to an RIR.  Ones through index n1; afterwards
// either zeros (rectangular kinds) or 10^(-q (n - n1)) for the exponential
// one.  q is 0 for the rectangular kinds.
struct ShorteningWindow {
  std::vector<double> values;
  std::size_t n1 = 0;
  double q = 0.0;
};

// Extra decay per sample needed to move a tail from one reverberation time
// to a shorter one: q = 3/(t60_target * fs) - 3/(t60_source * fs).
// Requires 0 < t60_target_s < t60_source_s.
double compute_q(double t60_source_s, double t60_target_s, int sample_rate_hz);

// Builds the windowing gain for the given target over the full RIR length.
// The exponential kind needs the source reverberation time: RIR metadata is
// used when present, otherwise it is estimated from the tail.
ShorteningWindow build_window(const TargetSpec& spec,
                              const RoomImpulseResponse& rir);

// Applies build_window's gain to the RIR samples.  For the exponential kind
// on an RIR with known decay p, the output carries decay p + q.
RoomImpulseResponse shorten_rir(const RoomImpulseResponse& rir,
                                const TargetSpec& spec);

struct TrainingPair {
  Waveform input;    // reverberant clean speech plus scaled noise
  Waveform target;   // clean speech convolved with the shortened RIR
  double noise_gain = 0.0;
  double q = 0.0;
  std::size_t n1 = 0;
  // Source reverberation time used for the window (NaN when not resolved;
  // it is only required by the exponential target kind).
  double t60_source_s = 0.0;
};

// Assembles one (input, target) pair: input = clean * rir + scaled noise at
// the requested SNR, target = clean * shortened rir.  Both outputs have
// length len(clean) + len(rir) - 1.  An infinite snr_db skips the noise
// entirely.  Deterministic given the seed.
TrainingPair make_training_pair(const Waveform& clean,
                                const RoomImpulseResponse& rir,
                                const TargetSpec& spec, const Waveform& noise,
                                double snr_db, std::uint64_t seed);

// Dense non-negative grid matching a spectrogram's shape, frame-major like
// Spectrogram itself.
struct MagnitudeGrid {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<double> values;

  double& at(std::size_t frame, std::size_t bin) {
    return values[frame * bins + bin];
  }
  double at(std::size_t frame, std::size_t bin) const {
    return values[frame * bins + bin];
  }
};

// Elementwise |X|^(1/3), the network input feature.
MagnitudeGrid cubic_root_magnitude(const Spectrogram& x);

// Mean over all time-frequency cells of (|P| - |T|)^2.  Inputs must share
// shape and STFT configuration.
double magnitude_mse(const Spectrogram& predicted, const Spectrogram& target);

}  // namespace revkit

#endif  // REVKIT_CORE_TARGETS_HPP_
