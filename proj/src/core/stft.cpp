// core/stft.cpp

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

#include "core/stft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "core/fft.hpp"

namespace revkit {

void validate_stft_config(const StftConfig& cfg) {
  if (cfg.window_length <= 0) {
    throw std::invalid_argument("stft: window_length must be positive");
  }
  if (cfg.hop_length <= 0) {
    throw std::invalid_argument("stft: hop_length must be positive");
  }
  if (cfg.hop_length > cfg.window_length) {
    throw std::invalid_argument("stft: hop_length exceeds window_length");
  }
  if (cfg.fft_size < cfg.window_length) {
    throw std::invalid_argument("stft: fft_size shorter than window_length");
  }
}

std::vector<double> make_window(WindowKind kind, int length) {
  if (length <= 0) throw std::invalid_argument("window length must be positive");
  std::vector<double> w(static_cast<std::size_t>(length), 1.0);
  const double step = 2.0 * std::numbers::pi / length;  // periodic form
  switch (kind) {
    case WindowKind::kHamming:
      for (int n = 0; n < length; ++n) w[n] = 0.54 - 0.46 * std::cos(step * n);
      break;
    case WindowKind::kHann:
      for (int n = 0; n < length; ++n) w[n] = 0.5 - 0.5 * std::cos(step * n);
      break;
    case WindowKind::kRectangular:
      break;
  }
  return w;
}

Spectrogram::Spectrogram(const StftConfig& cfg, std::size_t frames,
                         std::size_t original_length)
    : config_(cfg),
      frames_(frames),
      bins_(static_cast<std::size_t>(cfg.fft_size) / 2 + 1),
      original_length_(original_length),
      data_(frames * bins_) {}

Spectrogram stft(const Waveform& x, const StftConfig& cfg) {
  validate_stft_config(cfg);
  validate_waveform(x, "stft input");
  const std::size_t win = static_cast<std::size_t>(cfg.window_length);
  const std::size_t hop = static_cast<std::size_t>(cfg.hop_length);
  const std::size_t len = x.size();
  // One frame for a short signal, then one more per hop past the window.
  const std::size_t frames =
      len <= win ? 1 : (len - win + hop - 1) / hop + 1;

  Spectrogram spec(cfg, frames, len);
  const std::vector<double> window = make_window(cfg.window, cfg.window_length);

  RealFft fft(static_cast<std::size_t>(cfg.fft_size));
  std::vector<double> frame(win);
  for (std::size_t p = 0; p < frames; ++p) {
    const std::size_t start = p * hop;
    for (std::size_t n = 0; n < win; ++n) {
      const std::size_t idx = start + n;
      frame[n] = idx < len ? x.samples[idx] * window[n] : 0.0;
    }
    const std::vector<std::complex<double>> bins = fft.forward(frame);
    for (std::size_t k = 0; k < bins.size(); ++k) spec.at(p, k) = bins[k];
  }
  return spec;
}

Waveform istft(const Spectrogram& spec, int sample_rate_hz) {
  if (sample_rate_hz <= 0) {
    throw std::invalid_argument("istft: sample rate must be positive");
  }
  const StftConfig& cfg = spec.config();
  const std::size_t win = static_cast<std::size_t>(cfg.window_length);
  const std::size_t hop = static_cast<std::size_t>(cfg.hop_length);
  const std::size_t frames = spec.frames();
  const std::size_t total = (frames - 1) * hop + win;

  const std::vector<double> window = make_window(cfg.window, cfg.window_length);
  std::vector<double> num(total, 0.0);
  std::vector<double> den(total, 0.0);

  RealFft fft(static_cast<std::size_t>(cfg.fft_size));
  std::vector<std::complex<double>> bins(spec.bins());
  for (std::size_t p = 0; p < frames; ++p) {
    for (std::size_t k = 0; k < bins.size(); ++k) bins[k] = spec.at(p, k);
    const std::vector<double> frame = fft.inverse(bins);
    const std::size_t start = p * hop;
    for (std::size_t n = 0; n < win; ++n) {
      num[start + n] += window[n] * frame[n];
      den[start + n] += window[n] * window[n];
    }
  }

  const std::size_t out_len =
      spec.original_length() > 0 ? spec.original_length() : total;
  Waveform out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(out_len, 0.0);
  const std::size_t copy = out_len < total ? out_len : total;
  for (std::size_t n = 0; n < copy; ++n) {
    out.samples[n] = den[n] > 0.0 ? num[n] / den[n] : 0.0;
  }
  return out;
}

}  // namespace revkit
