// core/dataset.cpp

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

#include "core/dataset.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/wav_io.hpp"

namespace revkit {

namespace {

using nlohmann::json;

std::string require_string(const json& obj, const char* key, std::size_t index) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw std::invalid_argument("manifest entry " + std::to_string(index) +
                                ": missing or non-string '" + key + "'");
  }
  return obj[key].get<std::string>();
}

TargetSpec parse_target(const json& obj, std::size_t index) {
  if (!obj.is_object()) {
    throw std::invalid_argument("manifest entry " + std::to_string(index) +
                                ": 'target' must be an object");
  }
  const std::string kind = require_string(obj, "kind", index);
  if (kind == "direct") {
    return direct_path_target();
  }
  if (kind == "early") {
    TargetSpec spec = early_target();
    if (obj.contains("early_ms")) spec.early_ms = obj["early_ms"].get<double>();
    return spec;
  }
  if (kind == "rts") {
    TargetSpec spec = rts_target();
    if (obj.contains("t60_target_s")) {
      spec.t60_target_s = obj["t60_target_s"].get<double>();
    }
    return spec;
  }
  throw std::invalid_argument("manifest entry " + std::to_string(index) +
                              ": unknown target kind '" + kind +
                              "' (expected direct, early or rts)");
}

const char* kind_name(TargetKind kind) {
  switch (kind) {
    case TargetKind::kDirectPath: return "direct";
    case TargetKind::kEarly: return "early";
    case TargetKind::kRts: return "rts";
  }
  return "?";
}

json target_to_json(const TargetSpec& spec) {
  json j;
  j["kind"] = kind_name(spec.kind);
  if (spec.kind == TargetKind::kEarly) j["early_ms"] = spec.early_ms;
  if (spec.kind == TargetKind::kRts) j["t60_target_s"] = spec.t60_target_s;
  return j;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw IoError("cannot create file: " + tmp);
    f << text;
    if (!f) throw IoError("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot rename " + tmp + " to " + path);
  }
}

void process_entry(const ManifestEntry& entry, std::size_t index,
                   const std::string& out_dir, std::uint64_t master_seed) {
  const std::uint64_t seed =
      entry.seed ? *entry.seed : derive_seed(master_seed, index);

  const Waveform clean = read_wav(entry.clean_path);
  const Waveform rir_wave = read_wav(entry.rir_path, entry.rir_channel);
  const RoomImpulseResponse rir = rir_from_waveform(rir_wave);

  Waveform noise;
  const bool noiseless = std::isinf(entry.snr_db) && entry.snr_db > 0.0;
  if (!noiseless) noise = read_wav(entry.noise_path);

  const TrainingPair pair = make_training_pair(clean, rir, entry.target, noise,
                                               entry.snr_db, seed);

  char stem[32];
  std::snprintf(stem, sizeof(stem), "pair_%05zu", index);
  const std::string base = out_dir + "/" + stem;
  write_wav_atomic(base + "_input.wav", pair.input, WavFormat::kFloat32);
  write_wav_atomic(base + "_target.wav", pair.target, WavFormat::kFloat32);

  json meta;
  meta["index"] = index;
  meta["clean_path"] = entry.clean_path;
  meta["rir_path"] = entry.rir_path;
  meta["rir_channel"] = entry.rir_channel;
  meta["noise_path"] = noiseless ? json(nullptr) : json(entry.noise_path);
  meta["snr_db"] = noiseless ? json(nullptr) : json(entry.snr_db);
  meta["seed"] = seed;
  meta["target"] = target_to_json(entry.target);
  meta["q"] = pair.q;
  meta["n1"] = pair.n1;
  meta["t60_source_s"] =
      std::isnan(pair.t60_source_s) ? json(nullptr) : json(pair.t60_source_s);
  meta["noise_gain"] = pair.noise_gain;
  meta["sample_rate_hz"] = pair.input.sample_rate_hz;
  meta["length"] = pair.input.size();
  write_text_atomic(base + ".json", meta.dump(2) + "\n");
}

}  // namespace

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open manifest: " + path);

  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("manifest is not valid JSON: " +
                                std::string(e.what()));
  }
  if (!doc.is_array()) {
    throw std::invalid_argument("manifest must be a JSON array of entries");
  }

  std::vector<ManifestEntry> entries;
  entries.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& item = doc[i];
    if (!item.is_object()) {
      throw std::invalid_argument("manifest entry " + std::to_string(i) +
                                  ": expected an object");
    }
    ManifestEntry entry;
    entry.clean_path = require_string(item, "clean_path", i);
    entry.rir_path = require_string(item, "rir_path", i);
    if (item.contains("rir_channel")) {
      entry.rir_channel = item["rir_channel"].get<int>();
      if (entry.rir_channel < 0) {
        throw std::invalid_argument("manifest entry " + std::to_string(i) +
                                    ": rir_channel must be non-negative");
      }
    }
    if (item.contains("snr_db") && !item["snr_db"].is_null()) {
      if (!item["snr_db"].is_number()) {
        throw std::invalid_argument("manifest entry " + std::to_string(i) +
                                    ": snr_db must be a number");
      }
      entry.snr_db = item["snr_db"].get<double>();
    } else {
      entry.snr_db = std::numeric_limits<double>::infinity();  // noiseless
    }
    if (std::isfinite(entry.snr_db)) {
      entry.noise_path = require_string(item, "noise_path", i);
    } else if (item.contains("noise_path") && item["noise_path"].is_string()) {
      entry.noise_path = item["noise_path"].get<std::string>();
    }
    if (!item.contains("target")) {
      throw std::invalid_argument("manifest entry " + std::to_string(i) +
                                  ": missing 'target'");
    }
    entry.target = parse_target(item["target"], i);
    if (item.contains("seed") && !item["seed"].is_null()) {
      entry.seed = item["seed"].get<std::uint64_t>();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

DatasetReport prep_dataset(const std::vector<ManifestEntry>& entries,
                           const std::string& out_dir,
                           const DatasetOptions& options) {
  if (options.jobs < 1) {
    throw std::invalid_argument("prep_dataset: jobs must be at least 1");
  }
  std::filesystem::create_directories(out_dir);

  DatasetReport report;
  report.total = entries.size();
  if (entries.empty()) return report;

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> written{0};
  std::vector<std::string> failure_by_index(entries.size());
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t index = next.fetch_add(1);
      if (index >= entries.size()) break;
      try {
        process_entry(entries[index], index, out_dir, options.master_seed);
        written.fetch_add(1);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure_by_index[index] = "entry " + std::to_string(index) + " (" +
                                  entries[index].clean_path + "): " + e.what();
      }
    }
  };

  const std::size_t n_threads =
      std::min(static_cast<std::size_t>(options.jobs), entries.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  report.written = written.load();
  for (std::string& line : failure_by_index) {
    if (!line.empty()) report.failures.push_back(std::move(line));
  }
  return report;
}

}  // namespace revkit
