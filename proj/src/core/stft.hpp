// core/stft.hpp

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

#ifndef REVKIT_CORE_STFT_HPP_
#define REVKIT_CORE_STFT_HPP_

#include <complex>
#include <cstddef>
#include <vector>

#include "core/waveform.hpp"

namespace revkit {

enum class WindowKind {
  kHamming,
  kHann,
  kRectangular,
};

struct StftConfig {
  int window_length = 512;
  int hop_length = 256;
  int fft_size = 512;
  WindowKind window = WindowKind::kHamming;
};

// Throws std::invalid_argument when sizes are non-positive, the hop exceeds
// the window, or the FFT size is shorter than the window.
void validate_stft_config(const StftConfig& cfg);

// Periodic (DFT-even) analysis window of the given length.
std::vector<double> make_window(WindowKind kind, int length);

// Complex one-sided spectrogram.  Frames are stored contiguously:
// bin k of frame p lives at data()[p * bins() + k].
class Spectrogram {
 public:
  Spectrogram(const StftConfig& cfg, std::size_t frames,
              std::size_t original_length);

  std::size_t frames() const { return frames_; }
  std::size_t bins() const { return bins_; }
  // Number of samples in the analyzed signal; istft() trims to this length.
  std::size_t original_length() const { return original_length_; }
  const StftConfig& config() const { return config_; }

  std::complex<double>& at(std::size_t frame, std::size_t bin) {
    return data_[frame * bins_ + bin];
  }
  const std::complex<double>& at(std::size_t frame, std::size_t bin) const {
    return data_[frame * bins_ + bin];
  }
  std::complex<double>* data() { return data_.data(); }
  const std::complex<double>* data() const { return data_.data(); }

 private:
  StftConfig config_;
  std::size_t frames_;
  std::size_t bins_;
  std::size_t original_length_;
  std::vector<std::complex<double>> data_;
};

// Short-time Fourier transform.  The last frame is zero-padded, so every
// sample of the input is covered and istft(stft(x)) == x up to rounding.
Spectrogram stft(const Waveform& x, const StftConfig& cfg = StftConfig{});

// Weighted overlap-add inverse: frames are windowed again with the analysis
// window and the result is normalized by the accumulated squared window, so
// reconstruction is exact for any hop that keeps the denominator positive.
Waveform istft(const Spectrogram& spec, int sample_rate_hz);

}  // namespace revkit

#endif  // REVKIT_CORE_STFT_HPP_
