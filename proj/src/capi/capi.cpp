// capi/capi.cpp

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

// extern "C" surface over the core library.  Exceptions are translated to
// status codes here and never cross the boundary; the message of the most
// recent failure is kept per thread for revkit_last_error().

#include "revkit/revkit.h"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "core/analysis.hpp"
#include "core/convolve.hpp"
#include "core/crossband.hpp"
#include "core/dataset.hpp"
#include "core/errors.hpp"
#include "core/mixing.hpp"
#include "core/rir.hpp"
#include "core/scenarios.hpp"
#include "core/targets.hpp"
#include "core/wav_io.hpp"
#include "core/waveform.hpp"

struct revkit_waveform {
  revkit::Waveform w;
};
struct revkit_rir {
  revkit::RoomImpulseResponse r;
};
struct revkit_edc {
  revkit::EnergyDecayCurve c;
};
struct revkit_filter_bank {
  revkit::CrossBandFilterBank b;
};

namespace {

thread_local std::string t_last_error = "no error";

template <typename Fn>
revkit_status guarded(Fn&& fn) {
  try {
    fn();
    return REVKIT_OK;
  } catch (const std::invalid_argument& e) {
    t_last_error = e.what();
    return REVKIT_ERR_INVALID_ARGUMENT;
  } catch (const revkit::IoError& e) {
    t_last_error = e.what();
    return REVKIT_ERR_IO;
  } catch (const revkit::Error& e) {
    t_last_error = e.what();
    return REVKIT_ERR_NUMERIC;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return REVKIT_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return REVKIT_ERR_INTERNAL;
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

revkit::TargetSpec spec_from(const char* kind, double early_ms,
                             double t60_target_s) {
  require(kind != nullptr, "target kind is null");
  const std::string k = kind;
  if (k == "direct") return revkit::direct_path_target();
  if (k == "early") return revkit::early_target(early_ms);
  if (k == "rts") return revkit::rts_target(t60_target_s);
  throw std::invalid_argument("unknown target kind '" + k +
                              "' (expected direct, early or rts)");
}

char* copy_to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* revkit_last_error(void) { return t_last_error.c_str(); }

/* ---- waveforms ---------------------------------------------------- */

revkit_status revkit_waveform_create(const double* samples, size_t length,
                                     int sample_rate_hz,
                                     revkit_waveform** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(samples != nullptr || length == 0, "samples is null");
    revkit::Waveform w;
    w.sample_rate_hz = sample_rate_hz;
    w.samples.assign(samples, samples + length);
    revkit::validate_waveform(w, "waveform");
    *out = new revkit_waveform{std::move(w)};
  });
}

revkit_status revkit_waveform_load_wav(const char* path, int channel,
                                       revkit_waveform** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(path != nullptr, "path is null");
    *out = new revkit_waveform{revkit::read_wav(path, channel)};
  });
}

revkit_status revkit_waveform_save_wav(const revkit_waveform* w,
                                       const char* path, int float32) {
  return guarded([&] {
    require(w != nullptr, "waveform is null");
    require(path != nullptr, "path is null");
    revkit::write_wav_atomic(path, w->w,
                             float32 ? revkit::WavFormat::kFloat32
                                     : revkit::WavFormat::kPcm16);
  });
}

size_t revkit_waveform_length(const revkit_waveform* w) {
  return w ? w->w.size() : 0;
}

int revkit_waveform_sample_rate(const revkit_waveform* w) {
  return w ? w->w.sample_rate_hz : 0;
}

revkit_status revkit_waveform_copy_samples(const revkit_waveform* w,
                                           double* out, size_t capacity) {
  return guarded([&] {
    require(w != nullptr, "waveform is null");
    require(out != nullptr || capacity == 0, "out is null");
    const size_t n = w->w.size() < capacity ? w->w.size() : capacity;
    std::memcpy(out, w->w.samples.data(), n * sizeof(double));
  });
}

void revkit_waveform_destroy(revkit_waveform* w) { delete w; }

revkit_status revkit_white_noise(size_t length, int sample_rate_hz,
                                 uint64_t seed, revkit_waveform** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(sample_rate_hz > 0, "sample rate must be positive");
    *out = new revkit_waveform{
        revkit::white_noise(length, sample_rate_hz, seed)};
  });
}

revkit_status revkit_convolve(const revkit_waveform* x,
                              const revkit_waveform* h,
                              revkit_waveform** out) {
  return guarded([&] {
    require(x != nullptr && h != nullptr, "input waveform is null");
    require(out != nullptr, "out is null");
    *out = new revkit_waveform{revkit::convolve(x->w, h->w)};
  });
}

revkit_status revkit_mix_at_snr(const revkit_waveform* signal,
                                const revkit_waveform* noise, double snr_db,
                                uint64_t seed, revkit_waveform** mixed,
                                double* gain) {
  return guarded([&] {
    require(signal != nullptr && noise != nullptr, "input waveform is null");
    require(mixed != nullptr, "mixed is null");
    revkit::MixResult result =
        revkit::mix_at_snr(signal->w, noise->w, snr_db, seed);
    if (gain != nullptr) *gain = result.noise_gain;
    *mixed = new revkit_waveform{std::move(result.mixed)};
  });
}

/* ---- impulse responses -------------------------------------------- */

revkit_status revkit_rir_synth_polack(double t60_s, double duration_s,
                                      int sample_rate_hz, double drr_db,
                                      double onset_s, uint64_t seed,
                                      revkit_rir** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    revkit::PolackParams params;
    params.t60_s = t60_s;
    params.duration_s = duration_s;
    params.sample_rate_hz = sample_rate_hz;
    params.direct_to_reverberant_db = drr_db;
    params.onset_s = onset_s;
    params.seed = seed;
    *out = new revkit_rir{revkit::synth_polack_rir(params)};
  });
}

revkit_status revkit_rir_from_waveform(const revkit_waveform* wave,
                                       double margin_s, revkit_rir** out) {
  return guarded([&] {
    require(wave != nullptr, "waveform is null");
    require(out != nullptr, "out is null");
    *out = new revkit_rir{revkit::rir_from_waveform(wave->w, margin_s)};
  });
}

revkit_status revkit_rir_wave(const revkit_rir* rir, revkit_waveform** out) {
  return guarded([&] {
    require(rir != nullptr, "rir is null");
    require(out != nullptr, "out is null");
    *out = new revkit_waveform{rir->r.wave};
  });
}

size_t revkit_rir_direct_path_end(const revkit_rir* rir) {
  return rir ? rir->r.direct_path_end_index : 0;
}

revkit_status revkit_rir_decay(const revkit_rir* rir, double* t60_s,
                               double* p) {
  return guarded([&] {
    require(rir != nullptr, "rir is null");
    if (!rir->r.decay) {
      throw revkit::Error("impulse response carries no decay metadata");
    }
    if (t60_s != nullptr) *t60_s = rir->r.decay->t60_s;
    if (p != nullptr) *p = rir->r.decay->decay_exponent;
  });
}

void revkit_rir_destroy(revkit_rir* rir) { delete rir; }

revkit_status revkit_rir_shorten(const revkit_rir* rir, const char* kind,
                                 double early_ms, double t60_target_s,
                                 revkit_rir** out, double* q_out) {
  return guarded([&] {
    require(rir != nullptr, "rir is null");
    require(out != nullptr, "out is null");
    const revkit::TargetSpec spec = spec_from(kind, early_ms, t60_target_s);
    revkit::RoomImpulseResponse source = rir->r;
    if (spec.kind == revkit::TargetKind::kRts && !source.decay) {
      source.decay = revkit::estimate_t60(source.wave);
    }
    revkit::RoomImpulseResponse shortened = revkit::shorten_rir(source, spec);
    if (q_out != nullptr) {
      *q_out = spec.kind == revkit::TargetKind::kRts
                   ? revkit::compute_q(source.decay->t60_s, spec.t60_target_s,
                                       source.wave.sample_rate_hz)
                   : 0.0;
    }
    *out = new revkit_rir{std::move(shortened)};
  });
}

revkit_status revkit_compute_q(double t60_source_s, double t60_target_s,
                               int sample_rate_hz, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = revkit::compute_q(t60_source_s, t60_target_s, sample_rate_hz);
  });
}

revkit_status revkit_make_training_pair(
    const revkit_waveform* clean, const revkit_rir* rir, const char* kind,
    double early_ms, double t60_target_s, const revkit_waveform* noise,
    double snr_db, uint64_t seed, revkit_waveform** input,
    revkit_waveform** target, double* noise_gain, double* q_out) {
  return guarded([&] {
    require(clean != nullptr && rir != nullptr, "clean or rir is null");
    require(input != nullptr && target != nullptr, "output handle is null");
    require(noise != nullptr || (std::isinf(snr_db) && snr_db > 0.0),
            "noise is required for a finite snr_db");
    const revkit::TargetSpec spec = spec_from(kind, early_ms, t60_target_s);
    revkit::Waveform no_noise;
    no_noise.sample_rate_hz = clean->w.sample_rate_hz;
    revkit::TrainingPair pair = revkit::make_training_pair(
        clean->w, rir->r, spec, noise ? noise->w : no_noise, snr_db, seed);
    if (noise_gain != nullptr) *noise_gain = pair.noise_gain;
    if (q_out != nullptr) *q_out = pair.q;
    *input = new revkit_waveform{std::move(pair.input)};
    *target = new revkit_waveform{std::move(pair.target)};
  });
}

/* ---- energy decay curves ------------------------------------------ */

revkit_status revkit_edc_compute(const revkit_waveform* rir,
                                 revkit_edc** out) {
  return guarded([&] {
    require(rir != nullptr, "waveform is null");
    require(out != nullptr, "out is null");
    *out = new revkit_edc{revkit::edc(rir->w)};
  });
}

size_t revkit_edc_length(const revkit_edc* curve) {
  return curve ? curve->c.values_db.size() : 0;
}

revkit_status revkit_edc_copy(const revkit_edc* curve, double* out,
                              size_t capacity) {
  return guarded([&] {
    require(curve != nullptr, "curve is null");
    require(out != nullptr || capacity == 0, "out is null");
    const size_t n = curve->c.values_db.size() < capacity
                         ? curve->c.values_db.size()
                         : capacity;
    std::memcpy(out, curve->c.values_db.data(), n * sizeof(double));
  });
}

revkit_status revkit_edc_save_csv(const revkit_edc* curve, const char* path) {
  return guarded([&] {
    require(curve != nullptr, "curve is null");
    require(path != nullptr, "path is null");
    revkit::write_edc_csv(path, curve->c);
  });
}

void revkit_edc_destroy(revkit_edc* curve) { delete curve; }

revkit_status revkit_estimate_t60(const revkit_waveform* rir,
                                  double fit_upper_db, double fit_lower_db,
                                  double* t60_s, double* p) {
  return guarded([&] {
    require(rir != nullptr, "waveform is null");
    const revkit::DecayEstimate est = revkit::estimate_t60(
        rir->w, revkit::FitRangeDb{fit_upper_db, fit_lower_db});
    if (t60_s != nullptr) *t60_s = est.t60_s;
    if (p != nullptr) *p = est.decay_exponent;
  });
}

/* ---- analysis ------------------------------------------------------ */

revkit_status revkit_remaining_rir(const revkit_waveform* enhanced,
                                   const revkit_waveform* clean,
                                   double regularization, double rir_length_s,
                                   revkit_waveform** out) {
  return guarded([&] {
    require(enhanced != nullptr && clean != nullptr, "input waveform is null");
    require(out != nullptr, "out is null");
    *out = new revkit_waveform{revkit::remaining_rir(
        enhanced->w, clean->w, regularization, rir_length_s)};
  });
}

revkit_status revkit_edc_report_csv(const revkit_waveform* clean,
                                    const char* const* names,
                                    const revkit_waveform* const* signals,
                                    size_t count, double rir_length_s,
                                    double regularization, const char* path) {
  return guarded([&] {
    require(clean != nullptr, "clean is null");
    require(names != nullptr && signals != nullptr, "entry arrays are null");
    require(count > 0, "no signals given");
    require(path != nullptr, "path is null");
    std::vector<std::pair<std::string, revkit::Waveform>> entries;
    entries.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(names[i] != nullptr && signals[i] != nullptr,
              "entry name or waveform is null");
      entries.emplace_back(names[i], signals[i]->w);
    }
    const revkit::EdcReport report =
        revkit::edc_report(entries, clean->w, rir_length_s, regularization);
    revkit::write_edc_report_csv(path, report);
  });
}

/* ---- cross-band filters -------------------------------------------- */

namespace {

revkit::CrossbandParams crossband_params(int window_length, int hop_length,
                                         int fft_size, int neighborhood,
                                         int n_taps, int n_acausal,
                                         double probe_seconds, uint64_t seed,
                                         double ridge) {
  revkit::CrossbandParams params;
  params.stft.window_length = window_length;
  params.stft.hop_length = hop_length;
  params.stft.fft_size = fft_size;
  params.neighborhood = neighborhood;
  params.n_taps = n_taps;
  params.n_acausal = n_acausal;
  params.probe_seconds = probe_seconds;
  params.seed = seed;
  params.ridge = ridge;
  return params;
}

}  // namespace

revkit_status revkit_identify_crossband(const revkit_waveform* rir,
                                        int window_length, int hop_length,
                                        int fft_size, int neighborhood,
                                        int n_taps, int n_acausal,
                                        double probe_seconds, uint64_t seed,
                                        double ridge,
                                        revkit_filter_bank** out) {
  return guarded([&] {
    require(rir != nullptr, "rir is null");
    require(out != nullptr, "out is null");
    *out = new revkit_filter_bank{revkit::identify_crossband_filters(
        rir->w, crossband_params(window_length, hop_length, fft_size,
                                 neighborhood, n_taps, n_acausal,
                                 probe_seconds, seed, ridge))};
  });
}

revkit_status revkit_verify_crossband(const revkit_waveform* rir,
                                      int window_length, int hop_length,
                                      int fft_size, const int* l_values,
                                      size_t n_l, int n_taps, int n_acausal,
                                      double probe_seconds, uint64_t seed,
                                      double ridge,
                                      const revkit_waveform* test_signal,
                                      double* errors_db) {
  return guarded([&] {
    require(rir != nullptr && test_signal != nullptr, "input waveform is null");
    require(l_values != nullptr && n_l > 0, "no neighborhoods given");
    require(errors_db != nullptr, "errors_db is null");
    const std::vector<int> ls(l_values, l_values + n_l);
    const revkit::CrossbandVerifyReport report = revkit::verify_crossband_model(
        rir->w,
        crossband_params(window_length, hop_length, fft_size, 0, n_taps,
                         n_acausal, probe_seconds, seed, ridge),
        ls, test_signal->w);
    std::memcpy(errors_db, report.error_db.data(), n_l * sizeof(double));
  });
}

revkit_status revkit_write_crossband_csv(const int* l_values,
                                         const double* errors_db, size_t count,
                                         const char* path) {
  return guarded([&] {
    require(l_values != nullptr && errors_db != nullptr, "input array is null");
    require(count > 0, "empty report");
    require(path != nullptr, "path is null");
    revkit::CrossbandVerifyReport report;
    report.l_values.assign(l_values, l_values + count);
    report.error_db.assign(errors_db, errors_db + count);
    revkit::write_crossband_report_csv(path, report);
  });
}

size_t revkit_filter_bank_bins(const revkit_filter_bank* bank) {
  return bank ? bank->b.bins : 0;
}
int revkit_filter_bank_neighborhood(const revkit_filter_bank* bank) {
  return bank ? bank->b.neighborhood : 0;
}
int revkit_filter_bank_taps(const revkit_filter_bank* bank) {
  return bank ? bank->b.n_taps : 0;
}
int revkit_filter_bank_acausal(const revkit_filter_bank* bank) {
  return bank ? bank->b.n_acausal : 0;
}

revkit_status revkit_filter_bank_tap(const revkit_filter_bank* bank,
                                     size_t bin, int offset, int lag,
                                     double* re, double* im) {
  return guarded([&] {
    require(bank != nullptr, "bank is null");
    require(bin < bank->b.bins, "bin out of range");
    require(offset >= -bank->b.neighborhood && offset <= bank->b.neighborhood,
            "offset out of range");
    require(lag >= -bank->b.n_acausal &&
                lag <= bank->b.n_taps - 1 - bank->b.n_acausal,
            "lag out of range");
    const std::complex<double> tap = bank->b.tap(bin, offset, lag);
    if (re != nullptr) *re = tap.real();
    if (im != nullptr) *im = tap.imag();
  });
}

revkit_status revkit_filter_bank_save(const revkit_filter_bank* bank,
                                      const char* path) {
  return guarded([&] {
    require(bank != nullptr, "bank is null");
    require(path != nullptr, "path is null");
    revkit::save_filter_bank(path, bank->b);
  });
}

revkit_status revkit_filter_bank_load(const char* path,
                                      revkit_filter_bank** out) {
  return guarded([&] {
    require(path != nullptr, "path is null");
    require(out != nullptr, "out is null");
    *out = new revkit_filter_bank{revkit::load_filter_bank(path)};
  });
}

void revkit_filter_bank_destroy(revkit_filter_bank* bank) { delete bank; }

/* ---- dataset preparation and demos --------------------------------- */

revkit_status revkit_prep_dataset(const char* manifest_path,
                                  const char* out_dir, int jobs,
                                  uint64_t master_seed, char** report_json,
                                  size_t* failed_count) {
  return guarded([&] {
    require(manifest_path != nullptr, "manifest_path is null");
    require(out_dir != nullptr, "out_dir is null");
    const std::vector<revkit::ManifestEntry> entries =
        revkit::load_manifest(manifest_path);
    revkit::DatasetOptions options;
    options.jobs = jobs;
    options.master_seed = master_seed;
    const revkit::DatasetReport report =
        revkit::prep_dataset(entries, out_dir, options);
    if (failed_count != nullptr) *failed_count = report.failures.size();
    if (report_json != nullptr) {
      nlohmann::json j;
      j["total"] = report.total;
      j["written"] = report.written;
      j["failed"] = report.failures.size();
      j["failures"] = report.failures;
      j["out_dir"] = out_dir;
      *report_json = copy_to_c_string(j.dump(2));
    }
  });
}

void revkit_string_free(char* s) { std::free(s); }

revkit_status revkit_scenario_window_shapes(const char* out_dir) {
  return guarded([&] {
    require(out_dir != nullptr, "out_dir is null");
    revkit::scenario_window_shapes(out_dir);
  });
}

revkit_status revkit_scenario_edc_comparison(const char* out_dir) {
  return guarded([&] {
    require(out_dir != nullptr, "out_dir is null");
    revkit::scenario_edc_comparison(out_dir);
  });
}

} /* extern "C" */
