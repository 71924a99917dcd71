// core/wav_io.hpp

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

#ifndef REVKIT_CORE_WAV_IO_HPP
#define REVKIT_CORE_WAV_IO_HPP

#include <string>

#include "core/waveform.hpp"

namespace revkit {

enum class WavFormat { kPcm16, kFloat32 };

// Reads one channel of a PCM 16-bit or IEEE float-32 WAV file. Multichannel
// files are legal; `channel` selects which one (0-based).
Waveform read_wav(const std::string& path, int channel = 0);

// Writes a mono WAV file.
void write_wav(const std::string& path, const Waveform& w,
               WavFormat format = WavFormat::kFloat32);

// Writes to `path` + ".tmp" and renames, so readers never observe a partial
// file.
void write_wav_atomic(const std::string& path, const Waveform& w,
                      WavFormat format = WavFormat::kFloat32);

}  // namespace revkit

#endif  // REVKIT_CORE_WAV_IO_HPP
