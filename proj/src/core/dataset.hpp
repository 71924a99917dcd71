// core/dataset.hpp

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

#ifndef REVKIT_CORE_DATASET_HPP_
#define REVKIT_CORE_DATASET_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/targets.hpp"

namespace revkit {

// One row of the preparation manifest.  snr_db may be +infinity, in which
// case noise_path is unused and may be empty.  Entries without an explicit
// seed get one derived from the master seed and their index, so a manifest
// is reproducible as a whole yet insensitive to worker count.
struct ManifestEntry {
  std::string clean_path;
  std::string rir_path;
  std::string noise_path;
  int rir_channel = 0;
  double snr_db = 0.0;
  TargetSpec target;
  std::optional<std::uint64_t> seed;
};

// Parses a JSON manifest: a top-level array of objects with keys
// clean_path, rir_path, noise_path, rir_channel, snr_db, target {kind,
// early_ms | t60_target_s}, seed.  Malformed input is rejected before any
// audio is touched.
std::vector<ManifestEntry> load_manifest(const std::string& path);

struct DatasetOptions {
  int jobs = 1;
  std::uint64_t master_seed = 0;
};

struct DatasetReport {
  std::size_t total = 0;
  std::size_t written = 0;
  // One human-readable line per failed entry; empty on full success.
  std::vector<std::string> failures;
};

// Builds every pair in the manifest under out_dir: pair_NNNNN_input.wav,
// pair_NNNNN_target.wav and a pair_NNNNN.json sidecar with the window
// parameters and applied noise gain.  Files are written to temporary names
// and renamed, so readers never observe partial output.  Entries fail
// independently; the report lists casualties.
DatasetReport prep_dataset(const std::vector<ManifestEntry>& entries,
                           const std::string& out_dir,
                           const DatasetOptions& options = DatasetOptions{});

}  // namespace revkit

#endif  // REVKIT_CORE_DATASET_HPP_
