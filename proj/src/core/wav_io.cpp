// core/wav_io.cpp

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

#include "core/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "core/errors.hpp"

namespace revkit {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>((v >> 8) & 0xFF));
  s.push_back(static_cast<char>((v >> 16) & 0xFF));
  s.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace

Waveform read_wav(const std::string& path, int channel) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open WAV file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw IoError("not a RIFF/WAVE file: " + path);
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;
  bool have_fmt = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t chunk_len = read_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size()) break;
    if (std::memcmp(id, "fmt ", 4) == 0 && chunk_len >= 16) {
      const unsigned char* p = bytes.data() + body;
      format = read_u16(p);
      channels = read_u16(p + 2);
      rate = read_u32(p + 4);
      bits = read_u16(p + 14);
      if (format == kFormatExtensible && chunk_len >= 40) {
        // The sub-format GUID starts with the base format code.
        format = read_u16(p + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word aligned
  }

  if (!have_fmt || data == nullptr) throw IoError("missing fmt/data chunk: " + path);
  if (channels == 0 || rate == 0) throw IoError("malformed fmt chunk: " + path);
  if (channel < 0 || channel >= channels) {
    throw std::invalid_argument("channel " + std::to_string(channel) +
                                " out of range; file has " +
                                std::to_string(channels) + " channel(s)");
  }

  Waveform w;
  w.sample_rate_hz = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    const std::size_t frames = data_len / (2u * channels);
    w.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
      const unsigned char* p = data + (i * channels + channel) * 2;
      const auto v = static_cast<std::int16_t>(p[0] | (p[1] << 8));
      w.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    const std::size_t frames = data_len / (4u * channels);
    w.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
      float v;
      std::memcpy(&v, data + (i * channels + channel) * 4, 4);
      w.samples[i] = static_cast<double>(v);
    }
  } else {
    throw IoError("unsupported WAV encoding (format " + std::to_string(format) +
                  ", " + std::to_string(bits) + " bit): " + path);
  }
  validate_waveform(w, "wav data");
  return w;
}

void write_wav(const std::string& path, const Waveform& w, WavFormat format) {
  validate_waveform(w, "waveform");
  std::string out;
  const std::uint32_t n = static_cast<std::uint32_t>(w.size());
  const bool pcm = format == WavFormat::kPcm16;
  const std::uint16_t bytes_per = pcm ? 2 : 4;
  const std::uint32_t data_len = n * bytes_per;
  // fact chunk is required for non-PCM encodings.
  const std::uint32_t riff_len = 4 + (8 + 16) + (pcm ? 0 : 8 + 4) + (8 + data_len);

  out.reserve(riff_len + 8);
  out += "RIFF";
  put_u32(out, riff_len);
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, pcm ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(w.sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(w.sample_rate_hz) * bytes_per);
  put_u16(out, bytes_per);
  put_u16(out, static_cast<std::uint16_t>(bytes_per * 8));
  if (!pcm) {
    out += "fact";
    put_u32(out, 4);
    put_u32(out, n);
  }
  out += "data";
  put_u32(out, data_len);
  if (pcm) {
    for (double v : w.samples) {
      const double scaled = std::round(v * 32768.0);
      const auto clipped = static_cast<std::int16_t>(
          std::clamp(scaled, -32768.0, 32767.0));
      put_u16(out, static_cast<std::uint16_t>(clipped));
    }
  } else {
    for (double v : w.samples) {
      const float f = static_cast<float>(v);
      char buf[4];
      std::memcpy(buf, &f, 4);
      out.append(buf, 4);
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot create WAV file: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("short write: " + path);
}

void write_wav_atomic(const std::string& path, const Waveform& w,
                      WavFormat format) {
  const std::string tmp = path + ".tmp";
  write_wav(tmp, w, format);
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace revkit
