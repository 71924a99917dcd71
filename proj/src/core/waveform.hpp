// core/waveform.hpp

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

#ifndef REVKIT_CORE_WAVEFORM_HPP
#define REVKIT_CORE_WAVEFORM_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace revkit {

// Time-domain sample sequence. Samples are dimensionless amplitudes, nominal
// full scale +-1.0 (values outside that range are legal, e.g. after
// convolution).
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return sample_rate_hz > 0
               ? static_cast<double>(samples.size()) / sample_rate_hz
               : 0.0;
  }
};

// Throws std::invalid_argument unless the rate is positive and every sample
// is finite. `what` names the offending argument in the message.
void validate_waveform(const Waveform& w, const char* what);

double signal_power(const Waveform& w);  // mean square

// Zero-mean unit-variance Gaussian noise, deterministic per seed.
Waveform white_noise(std::size_t length, int sample_rate_hz,
                     std::uint64_t seed);

}  // namespace revkit

#endif  // REVKIT_CORE_WAVEFORM_HPP
