// tools/revkit_main.cpp

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

// Command-line front end.  Talks to the library exclusively through the
// public C API, prints machine-readable JSON on stdout and human diagnostics
// on stderr, and exits 0 on success, 2 on validation errors, 1 on runtime
// or I/O failures.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "revkit/revkit.h"

namespace {

using nlohmann::json;

template <typename T, void (*Destroy)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Destroy(p); }
};
using WavePtr =
    std::unique_ptr<revkit_waveform,
                    HandleDeleter<revkit_waveform, revkit_waveform_destroy>>;
using RirPtr =
    std::unique_ptr<revkit_rir, HandleDeleter<revkit_rir, revkit_rir_destroy>>;
using EdcPtr =
    std::unique_ptr<revkit_edc, HandleDeleter<revkit_edc, revkit_edc_destroy>>;

int report_failure(revkit_status status) {
  std::fprintf(stderr, "revkit: %s\n", revkit_last_error());
  return status == REVKIT_ERR_INVALID_ARGUMENT ? 2 : 1;
}

#define RK_TRY(expr)                                           \
  do {                                                         \
    const revkit_status rk_status__ = (expr);                  \
    if (rk_status__ != REVKIT_OK) {                            \
      return report_failure(rk_status__);                      \
    }                                                          \
  } while (0)

void print_json(const json& j) {
  std::fputs(j.dump(2).c_str(), stdout);
  std::fputc('\n', stdout);
}

/* ---- synth-rir ------------------------------------------------------ */

struct SynthOptions {
  double t60 = 0.0;
  double duration = 1.0;
  int fs = 16000;
  double drr_db = 0.0;
  double onset = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_synth(const SynthOptions& o) {
  revkit_rir* rir_raw = nullptr;
  RK_TRY(revkit_rir_synth_polack(o.t60, o.duration, o.fs, o.drr_db, o.onset,
                                 o.seed, &rir_raw));
  const RirPtr rir(rir_raw);

  revkit_waveform* wave_raw = nullptr;
  RK_TRY(revkit_rir_wave(rir.get(), &wave_raw));
  const WavePtr wave(wave_raw);
  RK_TRY(revkit_waveform_save_wav(wave.get(), o.out.c_str(), /*float32=*/1));
  std::fprintf(stderr, "wrote %s\n", o.out.c_str());

  double t60 = 0.0;
  double p = 0.0;
  RK_TRY(revkit_rir_decay(rir.get(), &t60, &p));

  json j;
  j["out"] = o.out;
  j["fs"] = o.fs;
  j["length"] = revkit_waveform_length(wave.get());
  j["t60_s"] = t60;
  j["p"] = p;
  j["n1"] = revkit_rir_direct_path_end(rir.get());
  j["drr_db"] = o.drr_db;
  j["onset_s"] = o.onset;
  j["seed"] = o.seed;
  print_json(j);
  return 0;
}

/* ---- analyze-rir ----------------------------------------------------- */

struct AnalyzeOptions {
  std::string in;
  int channel = 0;
  std::string edc_csv;
};

int run_analyze(const AnalyzeOptions& o) {
  revkit_waveform* wave_raw = nullptr;
  RK_TRY(revkit_waveform_load_wav(o.in.c_str(), o.channel, &wave_raw));
  const WavePtr wave(wave_raw);

  revkit_rir* rir_raw = nullptr;
  RK_TRY(revkit_rir_from_waveform(wave.get(), /*margin_s=*/0.002, &rir_raw));
  const RirPtr rir(rir_raw);

  double t60 = 0.0;
  double p = 0.0;
  RK_TRY(revkit_estimate_t60(wave.get(), -5.0, -25.0, &t60, &p));

  json j;
  j["in"] = o.in;
  j["fs"] = revkit_waveform_sample_rate(wave.get());
  j["length"] = revkit_waveform_length(wave.get());
  j["t60_s"] = t60;
  j["p"] = p;
  j["n1"] = revkit_rir_direct_path_end(rir.get());
  if (!o.edc_csv.empty()) {
    revkit_edc* curve_raw = nullptr;
    RK_TRY(revkit_edc_compute(wave.get(), &curve_raw));
    const EdcPtr curve(curve_raw);
    RK_TRY(revkit_edc_save_csv(curve.get(), o.edc_csv.c_str()));
    std::fprintf(stderr, "wrote %s\n", o.edc_csv.c_str());
    j["edc_csv"] = o.edc_csv;
  }
  print_json(j);
  return 0;
}

/* ---- shorten ---------------------------------------------------------- */

struct ShortenOptions {
  std::string in;
  std::string target;
  double early_ms = 50.0;
  double t60_target = 0.15;
  std::string out;
};

int run_shorten(const ShortenOptions& o) {
  revkit_waveform* in_raw = nullptr;
  RK_TRY(revkit_waveform_load_wav(o.in.c_str(), 0, &in_raw));
  const WavePtr in_wave(in_raw);

  revkit_rir* rir_raw = nullptr;
  RK_TRY(revkit_rir_from_waveform(in_wave.get(), 0.002, &rir_raw));
  const RirPtr rir(rir_raw);

  revkit_rir* out_raw = nullptr;
  double q = 0.0;
  RK_TRY(revkit_rir_shorten(rir.get(), o.target.c_str(), o.early_ms,
                            o.t60_target, &out_raw, &q));
  const RirPtr shortened(out_raw);

  revkit_waveform* wave_raw = nullptr;
  RK_TRY(revkit_rir_wave(shortened.get(), &wave_raw));
  const WavePtr wave(wave_raw);
  RK_TRY(revkit_waveform_save_wav(wave.get(), o.out.c_str(), 1));
  std::fprintf(stderr, "wrote %s\n", o.out.c_str());

  json j;
  j["in"] = o.in;
  j["out"] = o.out;
  j["target"] = o.target;
  j["fs"] = revkit_waveform_sample_rate(wave.get());
  j["length"] = revkit_waveform_length(wave.get());
  j["n1"] = revkit_rir_direct_path_end(shortened.get());
  if (o.target == "early") j["early_ms"] = o.early_ms;
  if (o.target == "rts") {
    j["t60_target_s"] = o.t60_target;
    j["q"] = q;
  }
  print_json(j);
  return 0;
}

/* ---- prep-dataset ------------------------------------------------------ */

struct PrepOptions {
  std::string manifest;
  std::string out_dir;
  int jobs = 1;
  std::uint64_t master_seed = 0;
};

int run_prep(const PrepOptions& o) {
  char* report = nullptr;
  size_t failed = 0;
  RK_TRY(revkit_prep_dataset(o.manifest.c_str(), o.out_dir.c_str(), o.jobs,
                             o.master_seed, &report, &failed));
  std::fputs(report, stdout);
  std::fputc('\n', stdout);
  revkit_string_free(report);
  if (failed > 0) {
    std::fprintf(stderr, "revkit: %zu manifest entr%s failed\n", failed,
                 failed == 1 ? "y" : "ies");
    return 1;
  }
  return 0;
}

/* ---- edc --------------------------------------------------------------- */

struct EdcOptions {
  std::string clean;
  std::vector<std::string> signals;
  double rir_len = 1.0;
  double reg = 1e-8;
  std::string out;
};

int run_edc(const EdcOptions& o) {
  std::vector<std::string> names;
  std::vector<std::string> paths;
  for (const std::string& s : o.signals) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
      std::fprintf(stderr, "revkit: --signal expects name=path, got '%s'\n",
                   s.c_str());
      return 2;
    }
    names.push_back(s.substr(0, eq));
    paths.push_back(s.substr(eq + 1));
  }

  revkit_waveform* clean_raw = nullptr;
  RK_TRY(revkit_waveform_load_wav(o.clean.c_str(), 0, &clean_raw));
  const WavePtr clean(clean_raw);

  std::vector<WavePtr> waves;
  std::vector<const revkit_waveform*> wave_ptrs;
  std::vector<const char*> name_ptrs;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    revkit_waveform* raw = nullptr;
    RK_TRY(revkit_waveform_load_wav(paths[i].c_str(), 0, &raw));
    waves.emplace_back(raw);
    wave_ptrs.push_back(raw);
    name_ptrs.push_back(names[i].c_str());
  }

  RK_TRY(revkit_edc_report_csv(clean.get(), name_ptrs.data(), wave_ptrs.data(),
                               wave_ptrs.size(), o.rir_len, o.reg,
                               o.out.c_str()));
  std::fprintf(stderr, "wrote %s\n", o.out.c_str());

  json j;
  j["out"] = o.out;
  j["clean"] = o.clean;
  j["names"] = names;
  j["rir_length_s"] = o.rir_len;
  j["regularization"] = o.reg;
  print_json(j);
  return 0;
}

/* ---- crossband-verify ---------------------------------------------------- */

struct CrossbandOptions {
  std::string rir;
  std::vector<int> ls{0, 1, 2, 4};
  int taps = 0;
  double probe_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_crossband(const CrossbandOptions& o) {
  revkit_waveform* rir_raw = nullptr;
  RK_TRY(revkit_waveform_load_wav(o.rir.c_str(), 0, &rir_raw));
  const WavePtr rir(rir_raw);

  // Held-out evaluation signal: one second of white noise from a seed that
  // cannot collide with the identification probe's.
  const int fs = revkit_waveform_sample_rate(rir.get());
  revkit_waveform* test_raw = nullptr;
  RK_TRY(revkit_white_noise(static_cast<size_t>(fs), fs, o.seed + 1,
                            &test_raw));
  const WavePtr test(test_raw);

  std::vector<double> errors(o.ls.size(), 0.0);
  RK_TRY(revkit_verify_crossband(rir.get(), 512, 256, 512, o.ls.data(),
                                 o.ls.size(), o.taps, /*n_acausal=*/1,
                                 o.probe_seconds, o.seed, /*ridge=*/0.0,
                                 test.get(), errors.data()));

  if (!o.out.empty()) {
    RK_TRY(revkit_write_crossband_csv(o.ls.data(), errors.data(), o.ls.size(),
                                      o.out.c_str()));
    std::fprintf(stderr, "wrote %s\n", o.out.c_str());
  }

  json j;
  j["rir"] = o.rir;
  j["l"] = o.ls;
  j["error_db"] = errors;
  j["seed"] = o.seed;
  if (!o.out.empty()) j["out"] = o.out;
  print_json(j);
  return 0;
}

/* ---- demo scenarios -------------------------------------------------------- */

int run_demo_windows(const std::string& out_dir) {
  RK_TRY(revkit_scenario_window_shapes(out_dir.c_str()));
  json j;
  j["out_dir"] = out_dir;
  j["files"] = {"windows.csv", "rir_direct.csv", "rir_early.csv",
                "rir_rts.csv"};
  print_json(j);
  return 0;
}

int run_demo_edc(const std::string& out_dir) {
  RK_TRY(revkit_scenario_edc_comparison(out_dir.c_str()));
  json j;
  j["out_dir"] = out_dir;
  j["files"] = {"edc_comparison.csv"};
  print_json(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "revkit - learning targets and diagnostics for speech dereverberation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "revkit 1.0.0");
  int rc = 0;

  SynthOptions synth;
  {
    CLI::App* c = app.add_subcommand(
        "synth-rir", "Synthesize an impulse response with an exponential tail");
    c->add_option("--t60", synth.t60, "Reverberation time in seconds")
        ->required();
    c->add_option("--duration", synth.duration, "Response length in seconds")
        ->capture_default_str();
    c->add_option("--fs", synth.fs, "Sample rate in Hz")->capture_default_str();
    c->add_option("--drr-db", synth.drr_db,
                  "Direct-to-reverberant energy ratio in dB")
        ->capture_default_str();
    c->add_option("--onset", synth.onset, "Direct-path delay in seconds")
        ->capture_default_str();
    c->add_option("--seed", synth.seed, "Seed for the diffuse tail")
        ->capture_default_str();
    c->add_option("--out", synth.out, "Output WAV path")->required();
    c->callback([&] { rc = run_synth(synth); });
  }

  AnalyzeOptions analyze;
  {
    CLI::App* c = app.add_subcommand(
        "analyze-rir", "Estimate decay parameters of an impulse response");
    c->add_option("--in", analyze.in, "Input WAV path")->required();
    c->add_option("--channel", analyze.channel, "Channel to read (0-based)")
        ->capture_default_str();
    c->add_option("--edc-csv", analyze.edc_csv,
                  "Also write the energy decay curve to this CSV");
    c->callback([&] { rc = run_analyze(analyze); });
  }

  ShortenOptions shorten;
  {
    CLI::App* c = app.add_subcommand(
        "shorten", "Apply a learning-target window to an impulse response");
    c->add_option("--in", shorten.in, "Input WAV path")->required();
    c->add_option("--target", shorten.target, "Target kind")
        ->required()
        ->check(CLI::IsMember({"direct", "early", "rts"}));
    c->add_option("--early-ms", shorten.early_ms,
                  "Early-reflection cutoff in milliseconds (early target)")
        ->capture_default_str();
    c->add_option("--t60-target", shorten.t60_target,
                  "Shortened reverberation time in seconds (rts target)")
        ->capture_default_str();
    c->add_option("--out", shorten.out, "Output WAV path")->required();
    c->callback([&] { rc = run_shorten(shorten); });
  }

  PrepOptions prep;
  {
    CLI::App* c = app.add_subcommand(
        "prep-dataset", "Build input/target training pairs from a manifest");
    c->add_option("--manifest", prep.manifest, "JSON manifest path")
        ->required();
    c->add_option("--out-dir", prep.out_dir, "Output directory")->required();
    c->add_option("--jobs", prep.jobs, "Worker thread count")
        ->capture_default_str();
    c->add_option("--master-seed", prep.master_seed,
                  "Seed that entries without an explicit seed derive from")
        ->capture_default_str();
    c->callback([&] { rc = run_prep(prep); });
  }

  EdcOptions edc;
  {
    CLI::App* c = app.add_subcommand(
        "edc", "Energy decay curves of processed signals via a clean reference");
    c->add_option("--clean", edc.clean, "Clean reference WAV")->required();
    c->add_option("--signal", edc.signals,
                  "Processed signal as name=path; repeatable")
        ->required();
    c->add_option("--rir-len", edc.rir_len,
                  "Length of the recovered response in seconds")
        ->capture_default_str();
    c->add_option("--reg", edc.reg, "Spectral-division regularization")
        ->capture_default_str();
    c->add_option("--out", edc.out, "Output CSV path")->required();
    c->callback([&] { rc = run_edc(edc); });
  }

  CrossbandOptions crossband;
  {
    CLI::App* c = app.add_subcommand(
        "crossband-verify",
        "Measure subband-model reconstruction error per neighborhood size");
    c->add_option("--rir", crossband.rir, "Impulse response WAV")->required();
    c->add_option("--l", crossband.ls, "Neighborhood sizes to test")
        ->capture_default_str();
    c->add_option("--taps", crossband.taps,
                  "Filter taps per band (0 = derive from response length)")
        ->capture_default_str();
    c->add_option("--probe-seconds", crossband.probe_seconds,
                  "Identification probe length (0 = shortest well-posed)")
        ->capture_default_str();
    c->add_option("--seed", crossband.seed, "Probe noise seed")
        ->capture_default_str();
    c->add_option("--out", crossband.out, "Optional output CSV path");
    c->callback([&] { rc = run_crossband(crossband); });
  }

  std::string windows_dir;
  {
    CLI::App* c = app.add_subcommand(
        "demo-windows",
        "Emit CSVs of the three target windows and a windowed response");
    c->add_option("--out-dir", windows_dir, "Output directory")->required();
    c->callback([&] { rc = run_demo_windows(windows_dir); });
  }

  std::string edc_dir;
  {
    CLI::App* c = app.add_subcommand(
        "demo-edc",
        "Emit a CSV comparing energy decay curves across target kinds");
    c->add_option("--out-dir", edc_dir, "Output directory")->required();
    c->callback([&] { rc = run_demo_edc(edc_dir); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}
