// core/targets.cpp

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

#include "core/targets.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "core/convolve.hpp"
#include "core/errors.hpp"
#include "core/mixing.hpp"

namespace revkit {

namespace {

void validate_spec(const TargetSpec& spec) {
  if (spec.kind == TargetKind::kEarly && spec.early_ms <= 0.0) {
    throw std::invalid_argument("target spec: early_ms must be positive");
  }
  if (spec.kind == TargetKind::kRts && spec.t60_target_s <= 0.0) {
    throw std::invalid_argument("target spec: t60_target_s must be positive");
  }
}

// Source reverberation time for the exponential kind: stored metadata wins,
// otherwise estimate from the tail.  Throws on failure (estimation errors
// propagate with their own messages).
DecayEstimate resolve_source_decay(const RoomImpulseResponse& rir) {
  if (rir.decay.has_value()) return *rir.decay;
  return estimate_t60(rir.wave);
}

ShorteningWindow window_for(const TargetSpec& spec, std::size_t length,
                            std::size_t n1, int fs, double t60_source_s) {
  ShorteningWindow w;
  w.n1 = n1;
  w.values.assign(length, 0.0);

  switch (spec.kind) {
    case TargetKind::kDirectPath: {
      for (std::size_t n = 0; n <= n1; ++n) w.values[n] = 1.0;
      break;
    }
    case TargetKind::kEarly: {
      const std::size_t extra = static_cast<std::size_t>(
          std::llround(spec.early_ms * fs / 1000.0));
      std::size_t cut = n1 + extra;
      if (cut > length - 1) cut = length - 1;
      for (std::size_t n = 0; n <= cut; ++n) w.values[n] = 1.0;
      break;
    }
    case TargetKind::kRts: {
      w.q = compute_q(t60_source_s, spec.t60_target_s, fs);
      for (std::size_t n = 0; n <= n1; ++n) w.values[n] = 1.0;
      for (std::size_t n = n1 + 1; n < length; ++n) {
        w.values[n] = std::pow(10.0, -w.q * static_cast<double>(n - n1));
      }
      break;
    }
  }
  return w;
}

}  // namespace

TargetSpec direct_path_target() { return TargetSpec{TargetKind::kDirectPath, 50.0, 0.15}; }

TargetSpec early_target(double early_ms) {
  return TargetSpec{TargetKind::kEarly, early_ms, 0.15};
}

TargetSpec rts_target(double t60_target_s) {
  return TargetSpec{TargetKind::kRts, 50.0, t60_target_s};
}

double compute_q(double t60_source_s, double t60_target_s, int sample_rate_hz) {
  if (sample_rate_hz <= 0) {
    throw std::invalid_argument("compute_q: sample rate must be positive");
  }
  if (t60_target_s <= 0.0 || t60_source_s <= 0.0) {
    throw std::invalid_argument("compute_q: reverberation times must be positive");
  }
  if (t60_target_s >= t60_source_s) {
    throw std::invalid_argument(
        "compute_q: target T60 (" + std::to_string(t60_target_s) +
        " s) must be shorter than source T60 (" +
        std::to_string(t60_source_s) + " s)");
  }
  const double fs = static_cast<double>(sample_rate_hz);
  return 3.0 / (t60_target_s * fs) - 3.0 / (t60_source_s * fs);
}

ShorteningWindow build_window(const TargetSpec& spec,
                              const RoomImpulseResponse& rir) {
  validate_spec(spec);
  validate_waveform(rir.wave, "rir");
  if (rir.direct_path_end_index >= rir.wave.size()) {
    throw std::invalid_argument("build_window: direct-path end beyond RIR length");
  }
  double t60 = 0.0;
  if (spec.kind == TargetKind::kRts) {
    t60 = resolve_source_decay(rir).t60_s;
  }
  return window_for(spec, rir.wave.size(), rir.direct_path_end_index,
                    rir.wave.sample_rate_hz, t60);
}

RoomImpulseResponse shorten_rir(const RoomImpulseResponse& rir,
                                const TargetSpec& spec) {
  validate_spec(spec);
  validate_waveform(rir.wave, "rir");
  if (rir.direct_path_end_index >= rir.wave.size()) {
    throw std::invalid_argument("shorten_rir: direct-path end beyond RIR length");
  }

  RoomImpulseResponse out;
  out.wave.sample_rate_hz = rir.wave.sample_rate_hz;
  out.direct_path_end_index = rir.direct_path_end_index;

  ShorteningWindow w;
  if (spec.kind == TargetKind::kRts) {
    const DecayEstimate src = resolve_source_decay(rir);
    w = window_for(spec, rir.wave.size(), rir.direct_path_end_index,
                   rir.wave.sample_rate_hz, src.t60_s);
    const double fs = static_cast<double>(rir.wave.sample_rate_hz);
    const double p_new = src.decay_exponent + w.q;
    out.decay = DecayEstimate{3.0 / (p_new * fs), p_new};
  } else {
    w = window_for(spec, rir.wave.size(), rir.direct_path_end_index,
                   rir.wave.sample_rate_hz, 0.0);
  }

  out.wave.samples.resize(rir.wave.size());
  for (std::size_t n = 0; n < rir.wave.size(); ++n) {
    out.wave.samples[n] = rir.wave.samples[n] * w.values[n];
  }
  return out;
}

TrainingPair make_training_pair(const Waveform& clean,
                                const RoomImpulseResponse& rir,
                                const TargetSpec& spec, const Waveform& noise,
                                double snr_db, std::uint64_t seed) {
  validate_waveform(clean, "clean speech");
  validate_spec(spec);

  // Resolve the source decay once so shorten_rir does not re-estimate it.
  RoomImpulseResponse source = rir;
  if (spec.kind == TargetKind::kRts && !source.decay) {
    source.decay = estimate_t60(source.wave);
  }

  const Waveform reverberant = convolve(clean, source.wave);

  TrainingPair pair;
  pair.target = convolve(clean, shorten_rir(source, spec).wave);
  pair.n1 = source.direct_path_end_index;
  pair.t60_source_s = source.decay
                          ? source.decay->t60_s
                          : std::numeric_limits<double>::quiet_NaN();
  if (spec.kind == TargetKind::kRts) {
    pair.q = compute_q(source.decay->t60_s, spec.t60_target_s,
                       source.wave.sample_rate_hz);
  }

  if (std::isinf(snr_db) && snr_db > 0.0) {
    pair.input = reverberant;
    pair.noise_gain = 0.0;
  } else {
    MixResult mix = mix_at_snr(reverberant, noise, snr_db, seed);
    pair.input = std::move(mix.mixed);
    pair.noise_gain = mix.noise_gain;
  }
  return pair;
}

MagnitudeGrid cubic_root_magnitude(const Spectrogram& x) {
  MagnitudeGrid grid;
  grid.frames = x.frames();
  grid.bins = x.bins();
  grid.values.resize(grid.frames * grid.bins);
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    grid.values[i] = std::cbrt(std::abs(x.data()[i]));
  }
  return grid;
}

double magnitude_mse(const Spectrogram& predicted, const Spectrogram& target) {
  const StftConfig& a = predicted.config();
  const StftConfig& b = target.config();
  if (predicted.frames() != target.frames() ||
      predicted.bins() != target.bins()) {
    throw std::invalid_argument("magnitude_mse: spectrogram shapes differ");
  }
  if (a.window_length != b.window_length || a.hop_length != b.hop_length ||
      a.fft_size != b.fft_size || a.window != b.window) {
    throw std::invalid_argument("magnitude_mse: STFT configurations differ");
  }
  const std::size_t total = predicted.frames() * predicted.bins();
  double acc = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    const double d = std::abs(predicted.data()[i]) - std::abs(target.data()[i]);
    acc += d * d;
  }
  return acc / static_cast<double>(total);
}

}  // namespace revkit
