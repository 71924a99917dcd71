// core/crossband.cpp

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

#include "core/crossband.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "core/convolve.hpp"
#include "core/errors.hpp"
#include "core/file_util.hpp"

namespace revkit {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr double kErrorFloorDb = -300.0;
constexpr std::uint32_t kBankVersion = 1;

// Band series of a real signal for band index m in [-l, K/2 + l]: indices
// outside the one-sided range mirror back with conjugation.
std::vector<VectorXcd> extended_bands(const Spectrogram& s, int l) {
  const int k2 = s.config().fft_size / 2;
  const Index frames = static_cast<Index>(s.frames());
  std::vector<VectorXcd> bands;
  bands.reserve(static_cast<std::size_t>(k2 + 1 + 2 * l));
  for (int m = -l; m <= k2 + l; ++m) {
    int base = m;
    bool mirrored = false;
    if (m < 0) {
      base = -m;
      mirrored = true;
    } else if (m > k2) {
      base = s.config().fft_size - m;
      mirrored = true;
    }
    VectorXcd v(frames);
    for (Index p = 0; p < frames; ++p) {
      const std::complex<double> c =
          s.at(static_cast<std::size_t>(p), static_cast<std::size_t>(base));
      v[p] = mirrored ? std::conj(c) : c;
    }
    bands.push_back(std::move(v));
  }
  return bands;
}

// Lagged copies of one band arranged for the covariance-method rows:
// row r, lag column j holds band[n_taps - 1 + r - j].
MatrixXcd lag_matrix(const VectorXcd& band, int n_taps) {
  const Index rows = band.size() - n_taps + 1;
  MatrixXcd w(rows, n_taps);
  for (Index r = 0; r < rows; ++r) {
    for (int j = 0; j < n_taps; ++j) {
      w(r, j) = band[n_taps - 1 + r - j];
    }
  }
  return w;
}

// Keeps the last 2l+1 lag matrices alive while bands are swept in order,
// so each is built at most once per sweep.
class LagRing {
 public:
  LagRing(const std::vector<VectorXcd>& bands, int l, int n_taps)
      : bands_(bands),
        l_(l),
        n_taps_(n_taps),
        slots_(static_cast<std::size_t>(2 * l + 1)),
        held_(static_cast<std::size_t>(2 * l + 1),
              std::numeric_limits<int>::min()) {}

  const MatrixXcd& get(int m) {
    const int size = 2 * l_ + 1;
    const auto slot = static_cast<std::size_t>((m + l_) % size);
    if (held_[slot] != m) {
      slots_[slot] = lag_matrix(bands_[static_cast<std::size_t>(m + l_)], n_taps_);
      held_[slot] = m;
    }
    return slots_[slot];
  }

 private:
  const std::vector<VectorXcd>& bands_;
  int l_;
  int n_taps_;
  std::vector<MatrixXcd> slots_;
  std::vector<int> held_;
};

// Normal equations of every per-bin least-squares problem, shared across
// bins: Gram blocks between extended bands at distance at most 2l, plus the
// per-bin right-hand side.  Bin k's full Gram is assembled from the blocks
// for bands k-l .. k+l.
struct LsSystem {
  int l = 0;
  int n_taps = 0;
  int n_acausal = 0;
  int k2 = 0;
  Index rows = 0;
  std::vector<MatrixXcd> blocks;  // (m + l) * (2l + 1) + (m' - m), m <= m'
  std::vector<VectorXcd> rhs;     // per bin, length (2l+1) * n_taps
};

LsSystem build_system(const Spectrogram& s, const Spectrogram& y, int l,
                      int n_taps, int n_acausal) {
  LsSystem sys;
  sys.l = l;
  sys.n_taps = n_taps;
  sys.n_acausal = n_acausal;
  sys.k2 = s.config().fft_size / 2;
  sys.rows = static_cast<Index>(s.frames()) - n_taps + 1;

  const std::vector<VectorXcd> bands = extended_bands(s, l);
  LagRing ring(bands, l, n_taps);
  const int width = 2 * l + 1;
  const int m_hi = sys.k2 + l;

  sys.blocks.assign(static_cast<std::size_t>(sys.k2 + 1 + 2 * l) *
                        static_cast<std::size_t>(width),
                    MatrixXcd());
  for (int m = -l; m <= m_hi; ++m) {
    const int mp_hi = std::min(m + 2 * l, m_hi);
    for (int mp = m; mp <= mp_hi; ++mp) {
      sys.blocks[static_cast<std::size_t>(m + l) * width + (mp - m)] =
          ring.get(m).adjoint() * ring.get(mp);
    }
  }

  const int p0 = n_taps - 1 - n_acausal;
  MatrixXcd ymat(sys.rows, sys.k2 + 1);
  for (int k = 0; k <= sys.k2; ++k) {
    for (Index r = 0; r < sys.rows; ++r) {
      ymat(r, k) = y.at(static_cast<std::size_t>(p0 + r),
                        static_cast<std::size_t>(k));
    }
  }

  sys.rhs.assign(static_cast<std::size_t>(sys.k2 + 1),
                 VectorXcd::Zero(static_cast<Index>(width) * n_taps));
  for (int m = -l; m <= m_hi; ++m) {
    const MatrixXcd& w = ring.get(m);
    const int k_lo = std::max(0, m - l);
    const int k_hi = std::min(sys.k2, m + l);
    for (int k = k_lo; k <= k_hi; ++k) {
      const int d = m - k;
      sys.rhs[static_cast<std::size_t>(k)].segment(
          static_cast<Index>(d + l) * n_taps, n_taps) = w.adjoint() * ymat.col(k);
    }
  }
  return sys;
}

MatrixXcd assemble_gram(const LsSystem& sys, int k) {
  const int width = 2 * sys.l + 1;
  const Index nt = sys.n_taps;
  MatrixXcd g(static_cast<Index>(width) * nt, static_cast<Index>(width) * nt);
  for (int di = 0; di < width; ++di) {
    const int m = k + di - sys.l;
    for (int dj = di; dj < width; ++dj) {
      const int mp = k + dj - sys.l;
      const MatrixXcd& blk =
          sys.blocks[static_cast<std::size_t>(m + sys.l) * width + (mp - m)];
      g.block(di * nt, dj * nt, nt, nt) = blk;
      if (dj != di) g.block(dj * nt, di * nt, nt, nt) = blk.adjoint();
    }
  }
  return g;
}

VectorXcd solve_normal_equations(const MatrixXcd& gram, const VectorXcd& b,
                                 double ridge, bool* deficient) {
  MatrixXcd g = gram;
  if (ridge > 0.0) g.diagonal().array() += ridge;
  Eigen::LDLT<MatrixXcd> ldlt(g);
  bool bad = ldlt.info() != Eigen::Success;
  if (!bad) {
    const Eigen::VectorXd d = ldlt.vectorD().real();
    const double dmax = d.cwiseAbs().maxCoeff();
    bad = dmax <= 0.0 || d.minCoeff() <= dmax * 1e-13;
  }
  if (bad) {
    *deficient = true;
    // Minimum-norm least-squares solution of the (singular) normal
    // equations; equals the pseudoinverse applied to b.
    return g.completeOrthogonalDecomposition().solve(b);
  }
  return ldlt.solve(b);
}

double ratio_db(double num, double den) {
  if (den <= 0.0) return kErrorFloorDb;
  const double r = num / den;
  if (r <= 0.0) return kErrorFloorDb;
  return std::max(10.0 * std::log10(r), kErrorFloorDb);
}

struct Resolved {
  int l = 0;
  int n_taps = 0;
  std::size_t probe_length = 0;
};

Resolved resolve_params(const Waveform& rir, const CrossbandParams& params,
                        int l_override) {
  validate_stft_config(params.stft);
  validate_waveform(rir, "rir");
  Resolved r;
  r.l = l_override >= 0 ? l_override : params.neighborhood;
  if (r.l < 0) {
    throw std::invalid_argument("crossband: neighborhood must be non-negative");
  }
  if (r.l > params.stft.fft_size / 2) {
    throw std::invalid_argument(
        "crossband: neighborhood exceeds the one-sided bin count");
  }
  r.n_taps = params.n_taps != 0 ? params.n_taps
                                : default_crossband_taps(rir.size(), params.stft);
  if (r.n_taps < 1) {
    throw std::invalid_argument("crossband: n_taps must be at least 1");
  }
  if (params.n_acausal < 0 || params.n_acausal >= r.n_taps) {
    throw std::invalid_argument("crossband: n_acausal must lie in [0, n_taps)");
  }
  if (params.ridge < 0.0) {
    throw std::invalid_argument("crossband: ridge must be non-negative");
  }
  const double needed =
      min_probe_seconds(params.stft, r.l, r.n_taps, rir.sample_rate_hz);
  const double seconds = params.probe_seconds > 0.0 ? params.probe_seconds : needed;
  r.probe_length = static_cast<std::size_t>(
      std::llround(seconds * rir.sample_rate_hz));

  // Overdetermination check, done up front so the error can say how long
  // the probe has to be.
  const auto win = static_cast<std::size_t>(params.stft.window_length);
  const auto hop = static_cast<std::size_t>(params.stft.hop_length);
  const std::size_t frames =
      r.probe_length <= win ? 1 : (r.probe_length - win + hop - 1) / hop + 1;
  const long long rows = static_cast<long long>(frames) - r.n_taps + 1;
  const long long unknowns = (2LL * r.l + 1) * r.n_taps;
  if (rows < 10 * unknowns) {
    char msg[192];
    std::snprintf(msg, sizeof(msg),
                  "crossband: probe too short: %.3f s gives %lld usable frames "
                  "for %lld unknowns per bin; need at least %.3f s",
                  seconds, rows < 0 ? 0 : rows, unknowns, needed);
    throw std::invalid_argument(msg);
  }
  return r;
}

template <typename T>
void put_raw(std::ofstream& f, T v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T take_raw(std::ifstream& f, const std::string& path) {
  T v;
  f.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!f) throw IoError("truncated filter bank file: " + path);
  return v;
}

}  // namespace

int default_crossband_taps(std::size_t rir_length, const StftConfig& cfg) {
  validate_stft_config(cfg);
  if (rir_length == 0) {
    throw std::invalid_argument("default_crossband_taps: empty impulse response");
  }
  const std::size_t num = rir_length + static_cast<std::size_t>(cfg.window_length);
  const std::size_t hop = static_cast<std::size_t>(cfg.hop_length);
  return static_cast<int>((num + hop - 1) / hop) + 1;
}

double min_probe_seconds(const StftConfig& cfg, int neighborhood, int n_taps,
                         int sample_rate_hz) {
  validate_stft_config(cfg);
  if (neighborhood < 0 || n_taps < 1 || sample_rate_hz <= 0) {
    throw std::invalid_argument("min_probe_seconds: invalid arguments");
  }
  const long long unknowns = (2LL * neighborhood + 1) * n_taps;
  const long long frames = 10 * unknowns + n_taps - 1;
  const long long samples = cfg.window_length + (frames - 1) * cfg.hop_length;
  return static_cast<double>(samples) / sample_rate_hz;
}

CrossBandFilterBank identify_crossband_filters(const Waveform& rir,
                                               const CrossbandParams& params) {
  const Resolved r = resolve_params(rir, params, -1);

  const Waveform probe =
      white_noise(r.probe_length, rir.sample_rate_hz, params.seed);
  const Waveform response = convolve(probe, rir);
  const Spectrogram s = stft(probe, params.stft);
  const Spectrogram y = stft(response, params.stft);

  const LsSystem sys = build_system(s, y, r.l, r.n_taps, params.n_acausal);

  CrossBandFilterBank bank;
  bank.config = params.stft;
  bank.neighborhood = r.l;
  bank.n_taps = r.n_taps;
  bank.n_acausal = params.n_acausal;
  bank.bins = s.bins();
  bank.taps.resize(bank.bins * static_cast<std::size_t>(2 * r.l + 1) *
                   static_cast<std::size_t>(r.n_taps));

  const Index u = static_cast<Index>(2 * r.l + 1) * r.n_taps;
  for (int k = 0; k <= sys.k2; ++k) {
    const MatrixXcd g = assemble_gram(sys, k);
    bool deficient = false;
    const VectorXcd a = solve_normal_equations(
        g, sys.rhs[static_cast<std::size_t>(k)], params.ridge, &deficient);
    if (deficient) bank.rank_deficient_bins.push_back(static_cast<std::uint32_t>(k));
    // The solution vector's (offset, lag) ordering matches the bank layout.
    std::size_t base = static_cast<std::size_t>(k) * static_cast<std::size_t>(u);
    for (Index i = 0; i < u; ++i) bank.taps[base + static_cast<std::size_t>(i)] = a[i];
  }
  return bank;
}

CrossbandVerifyReport verify_crossband_model(const Waveform& rir,
                                             const CrossbandParams& params,
                                             const std::vector<int>& l_values,
                                             const Waveform& test_signal) {
  if (l_values.empty()) {
    throw std::invalid_argument("verify_crossband_model: no neighborhoods given");
  }
  for (int l : l_values) {
    if (l < 0) {
      throw std::invalid_argument(
          "verify_crossband_model: neighborhoods must be non-negative");
    }
  }
  const int l_max = *std::max_element(l_values.begin(), l_values.end());
  const Resolved r = resolve_params(rir, params, l_max);

  validate_waveform(test_signal, "test signal");
  if (test_signal.sample_rate_hz != rir.sample_rate_hz) {
    throw std::invalid_argument(
        "verify_crossband_model: test signal sample rate differs from RIR");
  }

  const Waveform probe =
      white_noise(r.probe_length, rir.sample_rate_hz, params.seed);
  const Waveform response = convolve(probe, rir);
  const Spectrogram s = stft(probe, params.stft);
  const Spectrogram y = stft(response, params.stft);

  const Spectrogram s_test = stft(test_signal, params.stft);
  const Spectrogram y_test = stft(convolve(test_signal, rir), params.stft);
  const Index rows_test = static_cast<Index>(s_test.frames()) - r.n_taps + 1;
  if (rows_test < 1) {
    throw std::invalid_argument(
        "verify_crossband_model: test signal shorter than the filter span");
  }

  const LsSystem sys = build_system(s, y, l_max, r.n_taps, params.n_acausal);

  const std::vector<VectorXcd> test_bands = extended_bands(s_test, l_max);
  std::vector<MatrixXcd> test_lags;
  test_lags.reserve(test_bands.size());
  for (const VectorXcd& band : test_bands) {
    test_lags.push_back(lag_matrix(band, r.n_taps));
  }

  const int p0 = r.n_taps - 1 - params.n_acausal;
  const int k2 = sys.k2;
  MatrixXcd ytest(rows_test, k2 + 1);
  for (int k = 0; k <= k2; ++k) {
    for (Index row = 0; row < rows_test; ++row) {
      ytest(row, k) = y_test.at(static_cast<std::size_t>(p0 + row),
                                static_cast<std::size_t>(k));
    }
  }

  std::vector<double> num(l_values.size(), 0.0);
  double den = 0.0;
  const Index nt = r.n_taps;
  for (int k = 0; k <= k2; ++k) {
    const MatrixXcd g = assemble_gram(sys, k);
    const VectorXcd& b = sys.rhs[static_cast<std::size_t>(k)];
    den += ytest.col(k).squaredNorm();
    for (std::size_t i = 0; i < l_values.size(); ++i) {
      const int l = l_values[i];
      const Index c0 = static_cast<Index>(l_max - l) * nt;
      const Index usub = static_cast<Index>(2 * l + 1) * nt;
      bool deficient = false;
      const VectorXcd a = solve_normal_equations(
          g.block(c0, c0, usub, usub), b.segment(c0, usub), params.ridge,
          &deficient);
      VectorXcd yhat = VectorXcd::Zero(rows_test);
      for (int d = -l; d <= l; ++d) {
        yhat += test_lags[static_cast<std::size_t>(k + d + l_max)] *
                a.segment(static_cast<Index>(d + l) * nt, nt);
      }
      num[i] += (ytest.col(k) - yhat).squaredNorm();
    }
  }

  CrossbandVerifyReport report;
  report.l_values = l_values;
  report.error_db.resize(l_values.size());
  for (std::size_t i = 0; i < l_values.size(); ++i) {
    report.error_db[i] = ratio_db(num[i], den);
  }
  return report;
}

void write_crossband_report_csv(const std::string& path,
                                const CrossbandVerifyReport& report) {
  const std::string tmp = temp_write_name(path);
  std::ofstream f(tmp, std::ios::trunc);
  if (!f) throw IoError("cannot create CSV file: " + path);
  f << "l,error_db\n";
  char line[64];
  for (std::size_t i = 0; i < report.l_values.size(); ++i) {
    std::snprintf(line, sizeof(line), "%d,%.6f\n", report.l_values[i],
                  report.error_db[i]);
    f << line;
  }
  f.close();
  if (!f) {
    std::remove(tmp.c_str());
    throw IoError("short write: " + path);
  }
  commit_temp_file(tmp, path);
}

void save_filter_bank(const std::string& path,
                      const CrossBandFilterBank& bank) {
  static_assert(std::endian::native == std::endian::little,
                "filter bank serialization assumes a little-endian host");
  const std::size_t expected = bank.bins *
                               static_cast<std::size_t>(2 * bank.neighborhood + 1) *
                               static_cast<std::size_t>(bank.n_taps);
  if (bank.taps.size() != expected) {
    throw std::invalid_argument("save_filter_bank: tap count does not match shape");
  }
  const std::string tmp = temp_write_name(path);
  std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot create filter bank file: " + path);
  f.write("RKCB", 4);
  put_raw(f, kBankVersion);
  put_raw(f, static_cast<std::uint32_t>(bank.bins));
  put_raw(f, static_cast<std::int32_t>(bank.neighborhood));
  put_raw(f, static_cast<std::int32_t>(bank.n_taps));
  put_raw(f, static_cast<std::int32_t>(bank.n_acausal));
  put_raw(f, static_cast<std::int32_t>(bank.config.window_length));
  put_raw(f, static_cast<std::int32_t>(bank.config.hop_length));
  put_raw(f, static_cast<std::int32_t>(bank.config.fft_size));
  put_raw(f, static_cast<std::int32_t>(bank.config.window));
  put_raw(f, static_cast<std::uint32_t>(bank.rank_deficient_bins.size()));
  for (std::uint32_t k : bank.rank_deficient_bins) put_raw(f, k);
  for (const std::complex<double>& tap : bank.taps) {
    put_raw(f, static_cast<float>(tap.real()));
    put_raw(f, static_cast<float>(tap.imag()));
  }
  f.close();
  if (!f) {
    std::remove(tmp.c_str());
    throw IoError("short write: " + path);
  }
  commit_temp_file(tmp, path);
}

CrossBandFilterBank load_filter_bank(const std::string& path) {
  static_assert(std::endian::native == std::endian::little,
                "filter bank serialization assumes a little-endian host");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open filter bank file: " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::string(magic, 4) != "RKCB") {
    throw IoError("not a filter bank file: " + path);
  }
  const auto version = take_raw<std::uint32_t>(f, path);
  if (version != kBankVersion) {
    throw IoError("unsupported filter bank version " + std::to_string(version) +
                  ": " + path);
  }

  CrossBandFilterBank bank;
  bank.bins = take_raw<std::uint32_t>(f, path);
  bank.neighborhood = take_raw<std::int32_t>(f, path);
  bank.n_taps = take_raw<std::int32_t>(f, path);
  bank.n_acausal = take_raw<std::int32_t>(f, path);
  bank.config.window_length = take_raw<std::int32_t>(f, path);
  bank.config.hop_length = take_raw<std::int32_t>(f, path);
  bank.config.fft_size = take_raw<std::int32_t>(f, path);
  const auto kind = take_raw<std::int32_t>(f, path);
  if (kind < 0 || kind > static_cast<int>(WindowKind::kRectangular)) {
    throw IoError("corrupt filter bank (bad window kind): " + path);
  }
  bank.config.window = static_cast<WindowKind>(kind);
  if (bank.neighborhood < 0 || bank.n_taps < 1 || bank.n_acausal < 0 ||
      bank.n_acausal >= bank.n_taps || bank.bins == 0) {
    throw IoError("corrupt filter bank (bad shape): " + path);
  }
  validate_stft_config(bank.config);

  const auto n_deficient = take_raw<std::uint32_t>(f, path);
  if (n_deficient > bank.bins) {
    throw IoError("corrupt filter bank (diagnostics): " + path);
  }
  bank.rank_deficient_bins.resize(n_deficient);
  for (std::uint32_t& k : bank.rank_deficient_bins) {
    k = take_raw<std::uint32_t>(f, path);
  }

  const std::size_t count = bank.bins *
                            static_cast<std::size_t>(2 * bank.neighborhood + 1) *
                            static_cast<std::size_t>(bank.n_taps);
  bank.taps.resize(count);
  for (std::complex<double>& tap : bank.taps) {
    const float re = take_raw<float>(f, path);
    const float im = take_raw<float>(f, path);
    tap = std::complex<double>(re, im);
  }
  return bank;
}

}  // namespace revkit
