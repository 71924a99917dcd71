// core/mixing.hpp

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

#ifndef REVKIT_CORE_MIXING_HPP_
#define REVKIT_CORE_MIXING_HPP_

#include <cstddef>
#include <cstdint>

#include "core/waveform.hpp"

namespace revkit {

struct MixResult {
  Waveform mixed;
  double noise_gain = 0.0;     // scale applied to the noise before adding
  std::size_t noise_offset = 0;  // start of the crop inside the noise signal
};

// Adds a scaled crop of `noise` to `signal` so that the power ratio of the
// two matches `snr_db`.  Noise longer than the signal is cropped at a
// seeded random offset; shorter noise is tiled before cropping.  The gain
// is computed from the powers of the full signal and the chosen crop.
MixResult mix_at_snr(const Waveform& signal, const Waveform& noise,
                     double snr_db, std::uint64_t seed);

}  // namespace revkit

#endif  // REVKIT_CORE_MIXING_HPP_
