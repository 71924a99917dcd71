// core/analysis.hpp

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

#ifndef REVKIT_CORE_ANALYSIS_HPP_
#define REVKIT_CORE_ANALYSIS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "core/rir.hpp"
#include "core/waveform.hpp"

namespace revkit {

// Recovers the impulse response that relates a clean signal to its
// processed version by spectral division:
//
//   a = Re{ IDFT[ DFT(enhanced) / DFT(clean) ] }
//
// with the denominator magnitude floored at regularization * max|DFT(clean)|
// (phase kept) so spectral nulls cannot blow up the quotient.  The output
// is truncated (or zero-padded) to rir_length_s seconds.
Waveform remaining_rir(const Waveform& enhanced, const Waveform& clean,
                       double regularization = 1e-8, double rir_length_s = 1.0);

// One decay curve per named signal, on a shared time axis.
struct EdcReport {
  std::vector<double> time_s;
  std::vector<std::string> names;             // column order preserved
  std::vector<std::vector<double>> columns_db;  // one per name
};

// Runs remaining_rir then the Schroeder decay curve for every entry,
// against the same clean reference.  Entry names become CSV column names
// and must not contain commas or line breaks.
EdcReport edc_report(const std::vector<std::pair<std::string, Waveform>>& entries,
                     const Waveform& clean, double rir_length_s = 1.0,
                     double regularization = 1e-8);

// Header "time_s,<name>_db,..." followed by one row per sample.
void write_edc_report_csv(const std::string& path, const EdcReport& report);

}  // namespace revkit

#endif  // REVKIT_CORE_ANALYSIS_HPP_
