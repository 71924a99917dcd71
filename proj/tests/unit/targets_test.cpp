// tests/unit/targets_test.cpp

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

#include <cmath>
#include <limits>
#include <stdexcept>

#include <doctest.h>

#include "core/convolve.hpp"
#include "core/mixing.hpp"
#include "core/rir.hpp"
#include "core/stft.hpp"
#include "core/targets.hpp"
#include "core/waveform.hpp"

using namespace revkit;

namespace {

RoomImpulseResponse make_rir(double t60, double duration, std::uint64_t seed) {
  PolackParams p;
  p.t60_s = t60;
  p.duration_s = duration;
  p.seed = seed;
  return synth_polack_rir(p);
}

}  // namespace

TEST_CASE("extra decay per sample from source and target reverberation times") {
  CHECK(std::abs(compute_q(0.7, 0.15, 16000) - 9.82143e-4) < 1e-9);
  // 3/(0.15*16000) - 3/(0.75*16000) = 1.25e-3 - 2.5e-4, exactly 1e-3.
  CHECK(compute_q(0.75, 0.15, 16000) == doctest::Approx(1e-3).epsilon(1e-12));

  CHECK_THROWS_AS(compute_q(0.15, 0.15, 16000), std::invalid_argument);
  CHECK_THROWS_AS(compute_q(0.1, 0.15, 16000), std::invalid_argument);
  CHECK_THROWS_AS(compute_q(0.7, 0.0, 16000), std::invalid_argument);
  CHECK_THROWS_AS(compute_q(0.7, 0.15, 0), std::invalid_argument);
}

TEST_CASE("target factories carry the documented defaults") {
  CHECK(direct_path_target().kind == TargetKind::kDirectPath);
  CHECK(early_target().kind == TargetKind::kEarly);
  CHECK(early_target().early_ms == 50.0);
  CHECK(early_target(32.0).early_ms == 32.0);
  CHECK(rts_target().kind == TargetKind::kRts);
  CHECK(rts_target().t60_target_s == 0.15);
  CHECK(rts_target(0.2).t60_target_s == 0.2);
}

TEST_CASE("direct-path window keeps everything through the direct end only") {
  const RoomImpulseResponse rir = make_rir(0.5, 0.5, 1);
  const ShorteningWindow w = build_window(direct_path_target(), rir);
  REQUIRE(w.values.size() == rir.wave.size());
  CHECK(w.n1 == rir.direct_path_end_index);
  CHECK(w.q == 0.0);
  for (std::size_t n = 0; n < w.values.size(); ++n) {
    CHECK(w.values[n] == (n <= w.n1 ? 1.0 : 0.0));
  }
}

TEST_CASE("early window cuts 800 samples after the direct end at 16 kHz") {
  const RoomImpulseResponse rir = make_rir(0.5, 0.5, 2);
  const ShorteningWindow w = build_window(early_target(50.0), rir);
  const std::size_t cut = w.n1 + 800;
  CHECK(w.values[cut] == 1.0);
  CHECK(w.values[cut + 1] == 0.0);
  for (std::size_t n = 0; n < w.values.size(); ++n) {
    CHECK((w.values[n] == 0.0 || w.values[n] == 1.0));
  }
}

TEST_CASE("exponential window is flat then decays tenfold per 1000 samples") {
  // T60 0.75 -> 0.15 at 16 kHz gives q = 1e-3 exactly.
  const RoomImpulseResponse rir = make_rir(0.75, 1.0, 3);
  const ShorteningWindow w = build_window(rts_target(0.15), rir);
  CHECK(w.q == doctest::Approx(1e-3).epsilon(1e-12));
  for (std::size_t n = 0; n <= w.n1; ++n) CHECK(w.values[n] == 1.0);
  for (std::size_t n = w.n1; n + 1 < w.values.size(); n += 97) {
    CHECK(w.values[n + 1] / w.values[n] ==
          doctest::Approx(std::pow(10.0, -w.q)).epsilon(1e-12));
  }
  CHECK(w.values[w.n1 + 1000] == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("exponential window estimates the source decay when unmetered") {
  const RoomImpulseResponse synth = make_rir(0.5, 0.75, 4);
  const RoomImpulseResponse detected = rir_from_waveform(synth.wave, 0.002);
  const ShorteningWindow exact = build_window(rts_target(0.15), synth);
  const ShorteningWindow estimated = build_window(rts_target(0.15), detected);
  CHECK(std::abs(estimated.q / exact.q - 1.0) < 0.15);
}

TEST_CASE("shortening to a longer time than the source is rejected") {
  const RoomImpulseResponse rir = make_rir(0.3, 0.4, 5);
  CHECK_THROWS_AS(build_window(rts_target(0.3), rir), std::invalid_argument);
  CHECK_THROWS_AS(shorten_rir(rir, rts_target(0.8)), std::invalid_argument);
}

TEST_CASE("shortened responses have the expected structure") {
  const RoomImpulseResponse rir = make_rir(0.6, 0.9, 6);

  const RoomImpulseResponse direct = shorten_rir(rir, direct_path_target());
  double tail = 0.0;
  for (std::size_t n = rir.direct_path_end_index + 1; n < direct.wave.size();
       ++n) {
    tail += direct.wave.samples[n] * direct.wave.samples[n];
  }
  CHECK(tail == 0.0);
  CHECK(!direct.decay.has_value());

  const RoomImpulseResponse rts = shorten_rir(rir, rts_target(0.15));
  REQUIRE(rts.decay.has_value());
  CHECK(rts.decay->t60_s == doctest::Approx(0.15).epsilon(1e-12));
  const DecayEstimate est = estimate_t60(rts.wave);
  CHECK(std::abs(est.t60_s / 0.15 - 1.0) < 0.1);
}

TEST_CASE("training pairs convolve, window and mix deterministically") {
  const Waveform clean = white_noise(8000, 16000, 100);
  const Waveform noise = white_noise(32000, 16000, 200);
  const RoomImpulseResponse rir = make_rir(0.5, 0.5, 7);

  const TrainingPair pair =
      make_training_pair(clean, rir, rts_target(0.15), noise, 20.0, 11);
  const std::size_t want_len = clean.size() + rir.wave.size() - 1;
  CHECK(pair.input.size() == want_len);
  CHECK(pair.target.size() == want_len);
  CHECK(pair.n1 == rir.direct_path_end_index);
  CHECK(pair.q == doctest::Approx(compute_q(0.5, 0.15, 16000)));
  CHECK(pair.t60_source_s == 0.5);
  CHECK(pair.noise_gain > 0.0);

  // The reverberant part of the input is exactly the convolution; the rest
  // is the scaled noise at the requested ratio.
  const Waveform reverberant = convolve(clean, rir.wave);
  double ps = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < want_len; ++i) {
    const double n = pair.input.samples[i] - reverberant.samples[i];
    ps += reverberant.samples[i] * reverberant.samples[i];
    pn += n * n;
  }
  CHECK(std::abs(10.0 * std::log10(ps / pn) - 20.0) < 0.01);

  // The target is the clean signal through the shortened response.
  const Waveform want_target =
      convolve(clean, shorten_rir(rir, rts_target(0.15)).wave);
  for (std::size_t i = 0; i < want_len; i += 131) {
    CHECK(pair.target.samples[i] ==
          doctest::Approx(want_target.samples[i]).epsilon(1e-9));
  }

  const TrainingPair again =
      make_training_pair(clean, rir, rts_target(0.15), noise, 20.0, 11);
  CHECK(again.input.samples == pair.input.samples);
}

TEST_CASE("an infinite snr skips the noise entirely") {
  const Waveform clean = white_noise(4000, 16000, 1);
  const RoomImpulseResponse rir = make_rir(0.4, 0.3, 8);
  Waveform unused;
  unused.sample_rate_hz = 16000;
  const TrainingPair pair =
      make_training_pair(clean, rir, early_target(), unused,
                         std::numeric_limits<double>::infinity(), 0);
  CHECK(pair.noise_gain == 0.0);
  CHECK(pair.q == 0.0);
  const Waveform reverberant = convolve(clean, rir.wave);
  CHECK(pair.input.samples == reverberant.samples);
}

TEST_CASE("cubic-root magnitudes compress the spectrogram pointwise") {
  const Waveform x = white_noise(3000, 16000, 12);
  const Spectrogram spec = stft(x, StftConfig{});
  const MagnitudeGrid grid = cubic_root_magnitude(spec);
  REQUIRE(grid.frames == spec.frames());
  REQUIRE(grid.bins == spec.bins());
  for (std::size_t p = 0; p < grid.frames; p += 3) {
    for (std::size_t k = 0; k < grid.bins; k += 17) {
      CHECK(grid.at(p, k) ==
            doctest::Approx(std::cbrt(std::abs(spec.at(p, k)))).epsilon(1e-12));
    }
  }
}

TEST_CASE("magnitude distance is zero on identical inputs and validated") {
  const Waveform x = white_noise(5000, 16000, 13);
  const Waveform y = white_noise(5000, 16000, 14);
  const Spectrogram sx = stft(x, StftConfig{});
  const Spectrogram sy = stft(y, StftConfig{});
  CHECK(magnitude_mse(sx, sx) == 0.0);
  CHECK(magnitude_mse(sx, sy) > 0.0);
  CHECK(magnitude_mse(sx, sy) == magnitude_mse(sy, sx));

  const Spectrogram shorter = stft(white_noise(3000, 16000, 15), StftConfig{});
  CHECK_THROWS_AS(magnitude_mse(sx, shorter), std::invalid_argument);
  StftConfig other;
  other.window = WindowKind::kHann;
  const Spectrogram different_window = stft(x, other);
  CHECK_THROWS_AS(magnitude_mse(sx, different_window), std::invalid_argument);
}
