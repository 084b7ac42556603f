// lipper/codec/wav-io.h

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

#ifndef LIPPER_CODEC_WAV_IO_H_
#define LIPPER_CODEC_WAV_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "lipper/codec/lpc-codec.h"

namespace lipper {

// PCM 16-bit mono, little endian, canonical 44-byte header.  Samples map to
// integers as round(x * 32768) clamped to the int16 range, so signals whose
// samples are multiples of 1/32768 survive a write/read cycle exactly.

void WriteWav(std::ostream &os, const AudioSignal &signal);
void WriteWav(const std::string &path, const AudioSignal &signal);

/// Throws FormatError on anything other than 16-bit mono PCM.
AudioSignal ReadWav(std::istream &is);
AudioSignal ReadWav(const std::string &path);

/// Rounds each sample onto the 16-bit grid used by the WAV writer.
void QuantizeTo16Bit(AudioSignal *signal);

}  // namespace lipper

#endif  // LIPPER_CODEC_WAV_IO_H_
