// Copyright 2026 The erbfb Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Minimal RIFF/WAVE I/O: 16-bit PCM, mono, little-endian.

#ifndef ERBFB_WAV_HPP_
#define ERBFB_WAV_HPP_

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "erbfb/signal.hpp"

namespace erbfb {

namespace detail {

inline void put_u16(std::ostream& out, std::uint16_t v) {
  const char bytes[2] = {static_cast<char>(v & 0xff),
                         static_cast<char>((v >> 8) & 0xff)};
  out.write(bytes, 2);
}

inline void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff),
                         static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff),
                         static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

inline bool get_u16(std::istream& in, std::uint16_t& v) {
  unsigned char b[2];
  if (!in.read(reinterpret_cast<char*>(b), 2)) return false;
  v = static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  return true;
}

inline bool get_u32(std::istream& in, std::uint32_t& v) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
  v = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
      (static_cast<std::uint32_t>(b[2]) << 16) |
      (static_cast<std::uint32_t>(b[3]) << 24);
  return true;
}

}  // namespace detail

/// Writes the signal as 16-bit PCM mono, clamping samples to [-1, 1].
inline void write_wav16(const std::string& path, const SampledSignal& signal) {
  validate(signal);
  const auto rate = static_cast<std::uint32_t>(std::llround(signal.sample_rate_hz));
  if (rate == 0) {
    throw std::invalid_argument("wav: sample rate rounds to zero");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("wav: cannot open for writing: " + path);
  }
  const auto n = static_cast<std::uint32_t>(signal.samples.size());
  const std::uint32_t data_bytes = 2 * n;
  out.write("RIFF", 4);
  detail::put_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  detail::put_u32(out, 16);
  detail::put_u16(out, 1);  // PCM
  detail::put_u16(out, 1);  // mono
  detail::put_u32(out, rate);
  detail::put_u32(out, rate * 2);  // byte rate
  detail::put_u16(out, 2);         // block align
  detail::put_u16(out, 16);        // bits per sample
  out.write("data", 4);
  detail::put_u32(out, data_bytes);
  for (double v : signal.samples) {
    const double clamped = v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v);
    const auto q = static_cast<std::int16_t>(std::lrint(clamped * 32767.0));
    detail::put_u16(out, static_cast<std::uint16_t>(q));
  }
  if (!out) {
    throw std::invalid_argument("wav: write failed: " + path);
  }
}

inline SampledSignal read_wav16(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("wav: cannot open: " + path);
  }
  char tag[4];
  std::uint32_t riff_size = 0;
  if (!in.read(tag, 4) || std::string(tag, 4) != "RIFF" ||
      !detail::get_u32(in, riff_size) || !in.read(tag, 4) ||
      std::string(tag, 4) != "WAVE") {
    throw std::invalid_argument("wav: not a RIFF/WAVE file: " + path);
  }
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::vector<double> samples;
  bool have_data = false;
  while (in.read(tag, 4)) {
    std::uint32_t chunk_size = 0;
    if (!detail::get_u32(in, chunk_size)) break;
    const std::string id(tag, 4);
    if (id == "fmt ") {
      std::uint16_t format = 0, channels = 0, block_align = 0, bits = 0;
      std::uint32_t byte_rate = 0;
      if (chunk_size < 16 || !detail::get_u16(in, format) ||
          !detail::get_u16(in, channels) || !detail::get_u32(in, rate) ||
          !detail::get_u32(in, byte_rate) || !detail::get_u16(in, block_align) ||
          !detail::get_u16(in, bits)) {
        throw std::invalid_argument("wav: truncated fmt chunk: " + path);
      }
      if (format != 1 || channels != 1 || bits != 16) {
        throw std::invalid_argument(
            "wav: only 16-bit PCM mono is supported: " + path);
      }
      in.ignore(chunk_size - 16);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) {
        throw std::invalid_argument("wav: data chunk before fmt: " + path);
      }
      const std::size_t n = chunk_size / 2;
      samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::uint16_t raw = 0;
        if (!detail::get_u16(in, raw)) {
          throw std::invalid_argument("wav: truncated data chunk: " + path);
        }
        samples[i] = static_cast<std::int16_t>(raw) / 32768.0;
      }
      have_data = true;
      break;
    } else {
      in.ignore(chunk_size + (chunk_size & 1));  // chunks are word-aligned
    }
  }
  if (!have_data || samples.empty()) {
    throw std::invalid_argument("wav: no sample data: " + path);
  }
  return SampledSignal{std::move(samples), static_cast<double>(rate)};
}

}  // namespace erbfb

#endif  // ERBFB_WAV_HPP_
