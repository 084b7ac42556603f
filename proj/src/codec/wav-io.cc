// codec/wav-io.cc

// Copyright 2026  The Lipper Authors

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

#include "lipper/codec/wav-io.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "lipper/base/error.h"

namespace lipper {

namespace {

constexpr double kScale = 32768.0;

void PutU32(std::ostream &os, uint32_t v) {
  char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
               char((v >> 24) & 0xff)};
  os.write(b, 4);
}

void PutU16(std::ostream &os, uint16_t v) {
  char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
  os.write(b, 2);
}

uint32_t GetU32(const unsigned char *p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}

uint16_t GetU16(const unsigned char *p) { return uint16_t(p[0] | p[1] << 8); }

int16_t ToPcm(double x) {
  double v = std::round(x * kScale);
  return static_cast<int16_t>(std::clamp(v, -32768.0, 32767.0));
}

}  // namespace

void WriteWav(std::ostream &os, const AudioSignal &signal) {
  signal.Validate();
  const uint32_t rate = static_cast<uint32_t>(std::lround(signal.sample_rate));
  const uint32_t data_bytes = static_cast<uint32_t>(signal.samples.size() * 2);
  os.write("RIFF", 4);
  PutU32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  PutU32(os, 16);
  PutU16(os, 1);  // PCM
  PutU16(os, 1);  // mono
  PutU32(os, rate);
  PutU32(os, rate * 2);
  PutU16(os, 2);
  PutU16(os, 16);
  os.write("data", 4);
  PutU32(os, data_bytes);
  for (double x : signal.samples) PutU16(os, static_cast<uint16_t>(ToPcm(x)));
  if (!os) throw FormatError("wav: write failed");
}

void WriteWav(const std::string &path, const AudioSignal &signal) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("wav: cannot open " + path + " for writing");
  WriteWav(os, signal);
}

AudioSignal ReadWav(std::istream &is) {
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw FormatError("wav: not a RIFF/WAVE stream");

  AudioSignal out;
  bool have_fmt = false;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    uint32_t size = GetU32(chunk + 4);
    if (pos + 8 + size > bytes.size()) throw FormatError("wav: truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw FormatError("wav: short fmt chunk");
      uint16_t format = GetU16(chunk + 8), channels = GetU16(chunk + 10);
      uint16_t bits = GetU16(chunk + 22);
      if (format != 1 || channels != 1 || bits != 16)
        throw FormatError("wav: only 16-bit mono PCM is supported");
      out.sample_rate = GetU32(chunk + 12);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw FormatError("wav: data chunk before fmt chunk");
      out.samples.resize(size / 2);
      for (size_t i = 0; i < out.samples.size(); i++)
        out.samples[i] = static_cast<int16_t>(GetU16(chunk + 8 + 2 * i)) / kScale;
      return out;
    }
    pos += 8 + size + (size & 1);
  }
  throw FormatError("wav: no data chunk");
}

AudioSignal ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("wav: cannot open " + path);
  return ReadWav(is);
}

void QuantizeTo16Bit(AudioSignal *signal) {
  for (double &x : signal->samples) x = ToPcm(x) / kScale;
}

}  // namespace lipper
