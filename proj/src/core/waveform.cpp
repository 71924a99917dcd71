// core/waveform.cpp

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

#include "core/waveform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/rng.hpp"

namespace revkit {

void validate_waveform(const Waveform& w, const char* what) {
  if (w.sample_rate_hz <= 0) {
    throw std::invalid_argument(std::string(what) +
                                ": sample rate must be positive");
  }
  for (double v : w.samples) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) +
                                  ": samples must be finite");
    }
  }
}

double signal_power(const Waveform& w) {
  if (w.empty()) return 0.0;
  double acc = 0.0;
  for (double v : w.samples) acc += v * v;
  return acc / static_cast<double>(w.size());
}

Waveform white_noise(std::size_t length, int sample_rate_hz,
                     std::uint64_t seed) {
  SeededRng rng(seed);
  Waveform w;
  w.sample_rate_hz = sample_rate_hz;
  w.samples.resize(length);
  for (auto& v : w.samples) v = rng.gaussian();
  return w;
}

}  // namespace revkit
