// core/scenarios.hpp

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

#ifndef REVKIT_CORE_SCENARIOS_HPP_
#define REVKIT_CORE_SCENARIOS_HPP_

#include <string>

namespace revkit {

// Self-contained demo datasets for plotting.  Both are deterministic and
// write only into out_dir.

// Emits windows.csv (the direct/early/exponential shortening gains for a
// 0.7 s reverberation shortened to 0.15 s) plus rir_direct.csv,
// rir_early.csv and rir_rts.csv, the same synthetic impulse response under
// each window.
void scenario_window_shapes(const std::string& out_dir);

// Emits edc_comparison.csv: energy decay curves recovered from a synthetic
// reverberant signal and from ideally shortened versions of it, one column
// per variant (unprocessed, direct, early, rts).
void scenario_edc_comparison(const std::string& out_dir);

}  // namespace revkit

#endif  // REVKIT_CORE_SCENARIOS_HPP_
