// core/rir.cpp

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

#include "core/rir.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/file_util.hpp"
#include "core/rng.hpp"

namespace revkit {

namespace {

constexpr double kEdcFloorDb = -120.0;

}  // namespace

RoomImpulseResponse synth_polack_rir(const PolackParams& params) {
  if (params.t60_s <= 0.0) {
    throw std::invalid_argument("synth_polack_rir: t60_s must be positive");
  }
  if (params.sample_rate_hz <= 0) {
    throw std::invalid_argument("synth_polack_rir: sample rate must be positive");
  }
  if (params.duration_s <= 0.0) {
    throw std::invalid_argument("synth_polack_rir: duration_s must be positive");
  }
  if (params.onset_s < 0.0) {
    throw std::invalid_argument("synth_polack_rir: onset_s must be non-negative");
  }

  const double fs = static_cast<double>(params.sample_rate_hz);
  const std::size_t n = static_cast<std::size_t>(std::llround(params.duration_s * fs));
  const std::size_t n0 = static_cast<std::size_t>(std::llround(params.onset_s * fs));
  const std::size_t margin = static_cast<std::size_t>(std::llround(0.002 * fs));
  const std::size_t n1 = n0 + margin;
  if (n0 >= n) {
    throw std::invalid_argument("synth_polack_rir: onset beyond duration");
  }

  const double p = 3.0 / (params.t60_s * fs);

  RoomImpulseResponse rir;
  rir.wave.sample_rate_hz = params.sample_rate_hz;
  rir.wave.samples.assign(n, 0.0);
  rir.wave.samples[n0] = 1.0;
  rir.direct_path_end_index = n1 < n ? n1 : n - 1;
  rir.decay = DecayEstimate{params.t60_s, p};

  if (std::isinf(params.direct_to_reverberant_db) || n1 + 1 >= n) {
    return rir;  // anechoic: just the impulse
  }

  SeededRng rng(params.seed);
  std::vector<double> tail(n - n1 - 1);
  double tail_energy = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const double env = std::pow(10.0, -p * static_cast<double>(i + 1));
    tail[i] = rng.gaussian() * env;
    tail_energy += tail[i] * tail[i];
  }
  if (tail_energy <= 0.0) return rir;

  // Direct energy is 1, so the tail energy sets the ratio directly.
  const double want =
      std::pow(10.0, -params.direct_to_reverberant_db / 10.0);
  const double scale = std::sqrt(want / tail_energy);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    rir.wave.samples[n1 + 1 + i] = tail[i] * scale;
  }
  return rir;
}

std::size_t detect_direct_path(const Waveform& rir, double margin_s) {
  validate_waveform(rir, "rir");
  if (margin_s < 0.0) {
    throw std::invalid_argument("detect_direct_path: margin must be non-negative");
  }
  std::size_t peak = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < rir.size(); ++i) {
    const double mag = std::fabs(rir.samples[i]);
    if (mag > best) {  // strict: earliest of equal peaks wins
      best = mag;
      peak = i;
    }
  }
  if (best == 0.0) {
    throw std::invalid_argument("detect_direct_path: all-zero impulse response");
  }
  const std::size_t margin = static_cast<std::size_t>(
      std::llround(margin_s * rir.sample_rate_hz));
  const std::size_t n1 = peak + margin;
  return n1 < rir.size() ? n1 : rir.size() - 1;
}

RoomImpulseResponse rir_from_waveform(const Waveform& wave, double margin_s) {
  RoomImpulseResponse rir;
  rir.direct_path_end_index = detect_direct_path(wave, margin_s);
  rir.wave = wave;
  return rir;
}

EnergyDecayCurve edc(const Waveform& rir) {
  validate_waveform(rir, "rir");
  EnergyDecayCurve curve;
  curve.sample_rate_hz = rir.sample_rate_hz;
  curve.values_db.resize(rir.size());

  double acc = 0.0;
  for (std::size_t i = rir.size(); i-- > 0;) {
    acc += rir.samples[i] * rir.samples[i];
    curve.values_db[i] = acc;
  }
  const double total = curve.values_db[0];
  if (total <= 0.0) {
    throw std::invalid_argument("edc: zero-energy impulse response");
  }
  for (double& v : curve.values_db) {
    v = v > 0.0 ? 10.0 * std::log10(v / total) : kEdcFloorDb;
    if (v < kEdcFloorDb) v = kEdcFloorDb;
  }
  return curve;
}

DecayEstimate estimate_t60(const EnergyDecayCurve& curve, FitRangeDb fit) {
  if (curve.sample_rate_hz <= 0 || curve.values_db.empty()) {
    throw std::invalid_argument("estimate_t60: empty decay curve");
  }
  if (fit.upper <= fit.lower) {
    throw std::invalid_argument("estimate_t60: fit range upper bound must exceed lower");
  }
  const std::vector<double>& db = curve.values_db;

  std::size_t start = db.size();
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (db[i] <= fit.upper) {
      start = i;
      break;
    }
  }
  if (start == db.size()) {
    throw Error("estimate_t60: decay curve never reaches the upper fit bound");
  }
  std::size_t end = db.size();
  for (std::size_t i = start; i < db.size(); ++i) {
    if (db[i] <= fit.lower) {
      end = i;
      break;
    }
  }
  if (end == db.size()) {
    throw Error("estimate_t60: insufficient decay for the requested fit range");
  }
  if (end == start) {
    throw Error("estimate_t60: degenerate fit range");
  }

  // Plain least-squares line y = m t + b over [start, end].
  const double fs = static_cast<double>(curve.sample_rate_hz);
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const double count = static_cast<double>(end - start + 1);
  for (std::size_t i = start; i <= end; ++i) {
    const double t = static_cast<double>(i) / fs;
    st += t;
    sy += db[i];
    stt += t * t;
    sty += t * db[i];
  }
  const double denom = count * stt - st * st;
  if (denom == 0.0) throw Error("estimate_t60: degenerate fit range");
  const double slope = (count * sty - st * sy) / denom;
  if (slope >= 0.0) throw Error("estimate_t60: decay curve is not decreasing");

  DecayEstimate est;
  est.t60_s = -60.0 / slope;
  est.decay_exponent = 3.0 / (est.t60_s * fs);
  return est;
}

DecayEstimate estimate_t60(const Waveform& rir, FitRangeDb fit) {
  return estimate_t60(edc(rir), fit);
}

void write_edc_csv(const std::string& path, const EnergyDecayCurve& curve) {
  const std::string tmp = temp_write_name(path);
  std::ofstream f(tmp, std::ios::trunc);
  if (!f) throw IoError("cannot create CSV file: " + path);
  f << "time_s,edc_db\n";
  char line[64];
  for (std::size_t i = 0; i < curve.values_db.size(); ++i) {
    const double t = static_cast<double>(i) / curve.sample_rate_hz;
    std::snprintf(line, sizeof(line), "%.8f,%.6f\n", t, curve.values_db[i]);
    f << line;
  }
  f.close();
  if (!f) {
    std::remove(tmp.c_str());
    throw IoError("short write: " + path);
  }
  commit_temp_file(tmp, path);
}

}  // namespace revkit
