/* revkit/revkit.h */

/* Copyright 2026  The revkit authors */

/* Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 * THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
 * KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
 * WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
 * MERCHANTABLITY OR NON-INFRINGEMENT.
 * See the Apache 2 License for the specific language governing permissions and
 * limitations under the License. */

/* C interface to the reverberation-target toolkit.  All functions returning
 * revkit_status leave their outputs untouched on failure; the reason for
 * the most recent failure on the calling thread is available from
 * revkit_last_error().  Objects are created through out-parameters and
 * released with the matching _destroy function; destroy functions accept
 * NULL. */

#ifndef REVKIT_REVKIT_H_
#define REVKIT_REVKIT_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum revkit_status {
  REVKIT_OK = 0,
  REVKIT_ERR_INVALID_ARGUMENT = 1, /* caller broke a precondition */
  REVKIT_ERR_IO = 2,               /* file or OS failure */
  REVKIT_ERR_NUMERIC = 3,          /* runtime failure on valid input */
  REVKIT_ERR_INTERNAL = 4
} revkit_status;

typedef struct revkit_waveform revkit_waveform;
typedef struct revkit_rir revkit_rir;
typedef struct revkit_edc revkit_edc;
typedef struct revkit_filter_bank revkit_filter_bank;

/* Message for the most recent failure on this thread; never NULL. */
const char* revkit_last_error(void);

/* ---- waveforms ---------------------------------------------------- */

revkit_status revkit_waveform_create(const double* samples, size_t length,
                                     int sample_rate_hz,
                                     revkit_waveform** out);
/* channel selects one stream of a multichannel file, 0-based. */
revkit_status revkit_waveform_load_wav(const char* path, int channel,
                                       revkit_waveform** out);
/* float32 != 0 writes IEEE float samples, otherwise 16-bit PCM. */
revkit_status revkit_waveform_save_wav(const revkit_waveform* w,
                                       const char* path, int float32);
size_t revkit_waveform_length(const revkit_waveform* w);
int revkit_waveform_sample_rate(const revkit_waveform* w);
/* Copies min(length, capacity) samples into out. */
revkit_status revkit_waveform_copy_samples(const revkit_waveform* w,
                                           double* out, size_t capacity);
void revkit_waveform_destroy(revkit_waveform* w);

revkit_status revkit_white_noise(size_t length, int sample_rate_hz,
                                 uint64_t seed, revkit_waveform** out);
/* Full linear convolution; output length is len(x) + len(h) - 1. */
revkit_status revkit_convolve(const revkit_waveform* x,
                              const revkit_waveform* h,
                              revkit_waveform** out);
/* Adds a seeded random crop of noise scaled to the requested SNR.  gain may
 * be NULL. */
revkit_status revkit_mix_at_snr(const revkit_waveform* signal,
                                const revkit_waveform* noise, double snr_db,
                                uint64_t seed, revkit_waveform** mixed,
                                double* gain);

/* ---- impulse responses -------------------------------------------- */

/* Synthetic statistical impulse response: unit impulse, short gap, then an
 * exponentially decaying Gaussian tail whose energy sits drr_db below the
 * impulse.  Pass HUGE_VAL as drr_db for an anechoic response. */
revkit_status revkit_rir_synth_polack(double t60_s, double duration_s,
                                      int sample_rate_hz, double drr_db,
                                      double onset_s, uint64_t seed,
                                      revkit_rir** out);
/* Wraps a measured response; locates the end of the direct path using the
 * given margin after the peak (seconds). */
revkit_status revkit_rir_from_waveform(const revkit_waveform* wave,
                                       double margin_s, revkit_rir** out);
/* Copies the underlying sample data into a new waveform. */
revkit_status revkit_rir_wave(const revkit_rir* rir, revkit_waveform** out);
size_t revkit_rir_direct_path_end(const revkit_rir* rir);
/* Decay metadata attached at construction; REVKIT_ERR_NUMERIC when the
 * response carries none.  Either output may be NULL. */
revkit_status revkit_rir_decay(const revkit_rir* rir, double* t60_s,
                               double* p);
void revkit_rir_destroy(revkit_rir* rir);

/* kind is "direct", "early" or "rts"; early_ms and t60_target_s apply to
 * the matching kinds and are ignored otherwise.  q_out (may be NULL)
 * receives the exponential window's extra decay rate, 0 for the
 * rectangular kinds. */
revkit_status revkit_rir_shorten(const revkit_rir* rir, const char* kind,
                                 double early_ms, double t60_target_s,
                                 revkit_rir** out, double* q_out);

/* Extra per-sample decay needed to shorten t60_source_s to t60_target_s. */
revkit_status revkit_compute_q(double t60_source_s, double t60_target_s,
                               int sample_rate_hz, double* out);

/* input = clean * rir + noise at snr_db, target = clean * shortened rir.
 * noise may be NULL when snr_db is +infinity.  noise_gain and q_out may be
 * NULL. */
revkit_status revkit_make_training_pair(
    const revkit_waveform* clean, const revkit_rir* rir, const char* kind,
    double early_ms, double t60_target_s, const revkit_waveform* noise,
    double snr_db, uint64_t seed, revkit_waveform** input,
    revkit_waveform** target, double* noise_gain, double* q_out);

/* ---- energy decay curves ------------------------------------------ */

/* Schroeder backward-integrated energy in dB, 0 dB at the first sample,
 * floored at -120 dB. */
revkit_status revkit_edc_compute(const revkit_waveform* rir, revkit_edc** out);
size_t revkit_edc_length(const revkit_edc* curve);
revkit_status revkit_edc_copy(const revkit_edc* curve, double* out,
                              size_t capacity);
/* CSV with a time_s,edc_db header. */
revkit_status revkit_edc_save_csv(const revkit_edc* curve, const char* path);
void revkit_edc_destroy(revkit_edc* curve);

/* Line fit on the decay curve between the two dB bounds (defaults -5, -25),
 * extrapolated to -60 dB.  Either output may be NULL. */
revkit_status revkit_estimate_t60(const revkit_waveform* rir,
                                  double fit_upper_db, double fit_lower_db,
                                  double* t60_s, double* p);

/* ---- analysis ------------------------------------------------------ */

/* Spectral division of enhanced by clean with a relative magnitude floor on
 * the denominator; result truncated to rir_length_s. */
revkit_status revkit_remaining_rir(const revkit_waveform* enhanced,
                                   const revkit_waveform* clean,
                                   double regularization, double rir_length_s,
                                   revkit_waveform** out);

/* For each named signal: remaining_rir against clean, then the decay curve;
 * writes one aligned CSV with a time_s column plus one <name>_db column per
 * signal. */
revkit_status revkit_edc_report_csv(const revkit_waveform* clean,
                                    const char* const* names,
                                    const revkit_waveform* const* signals,
                                    size_t count, double rir_length_s,
                                    double regularization, const char* path);

/* ---- cross-band filters -------------------------------------------- */

/* Identifies subband filters mapping the STFT of a white-noise probe to the
 * STFT of the probe convolved with rir, over bands k-l .. k+l and n_taps
 * frame lags (n_acausal of them acausal).  n_taps = 0 derives the lag count
 * from the response length; probe_seconds = 0 uses the shortest probe that
 * keeps the system 10x overdetermined. */
revkit_status revkit_identify_crossband(const revkit_waveform* rir,
                                        int window_length, int hop_length,
                                        int fft_size, int neighborhood,
                                        int n_taps, int n_acausal,
                                        double probe_seconds, uint64_t seed,
                                        double ridge,
                                        revkit_filter_bank** out);

/* Identifies filters at max(l_values) on a probe, then reconstructs the
 * held-out test signal's output for every requested neighborhood.
 * errors_db must hold n_l values: 10 log10 of the relative reconstruction
 * error, floored at -300 dB. */
revkit_status revkit_verify_crossband(const revkit_waveform* rir,
                                      int window_length, int hop_length,
                                      int fft_size, const int* l_values,
                                      size_t n_l, int n_taps, int n_acausal,
                                      double probe_seconds, uint64_t seed,
                                      double ridge,
                                      const revkit_waveform* test_signal,
                                      double* errors_db);

/* CSV with an l,error_db header. */
revkit_status revkit_write_crossband_csv(const int* l_values,
                                         const double* errors_db, size_t count,
                                         const char* path);

size_t revkit_filter_bank_bins(const revkit_filter_bank* bank);
int revkit_filter_bank_neighborhood(const revkit_filter_bank* bank);
int revkit_filter_bank_taps(const revkit_filter_bank* bank);
int revkit_filter_bank_acausal(const revkit_filter_bank* bank);
/* offset in [-l, l]; lag in [-n_acausal, n_taps - 1 - n_acausal]. */
revkit_status revkit_filter_bank_tap(const revkit_filter_bank* bank,
                                     size_t bin, int offset, int lag,
                                     double* re, double* im);
revkit_status revkit_filter_bank_save(const revkit_filter_bank* bank,
                                      const char* path);
revkit_status revkit_filter_bank_load(const char* path,
                                      revkit_filter_bank** out);
void revkit_filter_bank_destroy(revkit_filter_bank* bank);

/* ---- dataset preparation and demos --------------------------------- */

/* Processes a JSON manifest of training pairs into out_dir.  On success
 * *report_json (if non-NULL) receives a malloc'd JSON summary to release
 * with revkit_string_free; *failed_count (if non-NULL) receives the number
 * of entries that failed.  Per-entry failures still return REVKIT_OK; only
 * a malformed manifest or an unusable output directory fail the call. */
revkit_status revkit_prep_dataset(const char* manifest_path,
                                  const char* out_dir, int jobs,
                                  uint64_t master_seed, char** report_json,
                                  size_t* failed_count);
void revkit_string_free(char* s);

/* Deterministic plottable CSV bundles; see the library documentation. */
revkit_status revkit_scenario_window_shapes(const char* out_dir);
revkit_status revkit_scenario_edc_comparison(const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* REVKIT_REVKIT_H_ */
