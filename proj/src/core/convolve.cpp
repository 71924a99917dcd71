// core/convolve.cpp

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

#include "core/convolve.hpp"

#include <stdexcept>
#include <string>

#include "core/fft.hpp"

namespace revkit {

Waveform convolve(const Waveform& x, const Waveform& h) {
  validate_waveform(x, "convolve input");
  validate_waveform(h, "convolve filter");
  if (x.sample_rate_hz != h.sample_rate_hz) {
    throw std::invalid_argument(
        "convolve: sample rates differ (" + std::to_string(x.sample_rate_hz) +
        " vs " + std::to_string(h.sample_rate_hz) + ")");
  }

  const std::size_t out_len = x.size() + h.size() - 1;
  const std::size_t n = next_pow2(out_len);
  RealFft fft(n);

  std::vector<std::complex<double>> spec = fft.forward(x.samples);
  const std::vector<std::complex<double>> hf = fft.forward(h.samples);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= hf[k];

  std::vector<double> full = fft.inverse(spec);
  full.resize(out_len);

  Waveform out;
  out.sample_rate_hz = x.sample_rate_hz;
  out.samples = std::move(full);
  return out;
}

}  // namespace revkit
