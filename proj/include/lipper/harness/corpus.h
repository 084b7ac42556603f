// lipper/harness/corpus.h

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

#ifndef LIPPER_HARNESS_CORPUS_H_
#define LIPPER_HARNESS_CORPUS_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lipper/base/image.h"
#include "lipper/base/pose.h"
#include "lipper/codec/lpc-codec.h"

namespace lipper {

inline constexpr int kNumPhrases = 10;
inline constexpr int kNumRepetitions = 3;

/// Phrase names, 1-based index.
const std::string &PhraseName(int phrase);

struct SpeakerInfo {
  int id = 0;
  bool female = false;
  bool operator==(const SpeakerInfo &other) const = default;
};

/// One spoken phrase: time-aligned frame stacks for each recorded view plus
/// the reference audio.  Audio-only corpora leave `views` empty.
struct Utterance {
  int speaker = 0;
  int phrase = 0;      // 1..kNumPhrases
  int repetition = 0;  // 1..kNumRepetitions
  int frames = 0;      // every view holds exactly this many frames
  std::map<int, std::vector<GrayImage>> views;
  AudioSignal audio;

  int NumFrames() const { return frames; }
  /// "s03_p07_r2"
  std::string Id() const;
  bool operator==(const Utterance &other) const = default;
};

struct Corpus {
  double fps = 30.0;
  double sample_rate = 20000.0;
  int frame_size = 128;
  uint64_t seed = 0;
  std::string generator;
  std::vector<SpeakerInfo> speakers;
  std::vector<Utterance> utterances;

  /// nullptr when absent.
  const Utterance *Find(int speaker, int phrase, int repetition) const;
  const SpeakerInfo &Speaker(int id) const;
  /// Checks structural invariants.  Views of one utterance must share a frame
  /// count and frame size; a frame-count / audio-duration mismatch of more
  /// than one frame throws AlignmentError, anything else IngestError.
  void Validate() const;
  bool operator==(const Corpus &other) const = default;
};

}  // namespace lipper

#endif  // LIPPER_HARNESS_CORPUS_H_
