// core/mixing.cpp

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

#include "core/mixing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/rng.hpp"

namespace revkit {

MixResult mix_at_snr(const Waveform& signal, const Waveform& noise,
                     double snr_db, std::uint64_t seed) {
  validate_waveform(signal, "mix signal");
  validate_waveform(noise, "mix noise");
  if (signal.sample_rate_hz != noise.sample_rate_hz) {
    throw std::invalid_argument(
        "mix_at_snr: sample rates differ (" +
        std::to_string(signal.sample_rate_hz) + " vs " +
        std::to_string(noise.sample_rate_hz) + ")");
  }
  if (!std::isfinite(snr_db)) {
    throw std::invalid_argument("mix_at_snr: snr_db must be finite");
  }

  const std::size_t len = signal.size();
  SeededRng rng(seed);
  std::size_t offset = 0;
  std::vector<double> crop(len);
  if (noise.size() >= len) {
    offset = rng.uniform_below(noise.size() - len + 1);
    for (std::size_t i = 0; i < len; ++i) crop[i] = noise.samples[offset + i];
  } else {
    // Short noise wraps around; the offset picks where in the cycle to start.
    offset = rng.uniform_below(noise.size());
    for (std::size_t i = 0; i < len; ++i) {
      crop[i] = noise.samples[(offset + i) % noise.size()];
    }
  }

  double ps = 0.0, pn = 0.0;
  for (double v : signal.samples) ps += v * v;
  for (double v : crop) pn += v * v;
  ps /= static_cast<double>(len);
  pn /= static_cast<double>(len);
  if (ps <= 0.0) throw std::invalid_argument("mix_at_snr: signal has zero energy");
  if (pn <= 0.0) throw std::invalid_argument("mix_at_snr: noise crop has zero energy");

  const double gain = std::sqrt(ps / (pn * std::pow(10.0, snr_db / 10.0)));

  MixResult result;
  result.mixed.sample_rate_hz = signal.sample_rate_hz;
  result.mixed.samples.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    result.mixed.samples[i] = signal.samples[i] + gain * crop[i];
  }
  result.noise_gain = gain;
  result.noise_offset = offset;
  return result;
}

}  // namespace revkit
