// core/convolve.hpp

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

#ifndef REVKIT_CORE_CONVOLVE_HPP_
#define REVKIT_CORE_CONVOLVE_HPP_

#include "core/waveform.hpp"

namespace revkit {

// Full linear convolution of two waveforms, computed in the frequency
// domain.  The output has length len(x) + len(h) - 1 and the sample rate
// of the inputs, which must match.
Waveform convolve(const Waveform& x, const Waveform& h);

}  // namespace revkit

#endif  // REVKIT_CORE_CONVOLVE_HPP_
