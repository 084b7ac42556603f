// harness/corpus.cc

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

#include "lipper/harness/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "lipper/base/error.h"

namespace lipper {

const std::string &PhraseName(int phrase) {
  static const std::array<std::string, kNumPhrases> kNames{
      "Excuse me",  "Goodbye",    "Hello",     "How are you",      "Nice to meet you",
      "See you",    "I am sorry", "Thank you", "Have a good time", "You are welcome"};
  if (phrase < 1 || phrase > kNumPhrases)
    throw Error("phrase index out of range: " + std::to_string(phrase));
  return kNames[phrase - 1];
}

std::string Utterance::Id() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "s%02d_p%02d_r%d", speaker, phrase, repetition);
  return buf;
}

const Utterance *Corpus::Find(int speaker, int phrase, int repetition) const {
  for (const Utterance &u : utterances)
    if (u.speaker == speaker && u.phrase == phrase && u.repetition == repetition) return &u;
  return nullptr;
}

const SpeakerInfo &Corpus::Speaker(int id) const {
  for (const SpeakerInfo &s : speakers)
    if (s.id == id) return s;
  throw Error("unknown speaker " + std::to_string(id));
}

void Corpus::Validate() const {
  if (!(fps > 0) || !(sample_rate > 0)) throw IngestError("corpus: fps and sample_rate must be positive");
  std::set<int> ids;
  for (const SpeakerInfo &s : speakers)
    if (!ids.insert(s.id).second) throw IngestError("corpus: duplicate speaker " + std::to_string(s.id));
  std::set<std::string> seen;
  for (const Utterance &u : utterances) {
    const std::string id = u.Id();
    if (!seen.insert(id).second) throw IngestError("corpus: duplicate utterance " + id);
    if (!ids.count(u.speaker)) throw IngestError(id + ": speaker not listed");
    if (u.phrase < 1 || u.phrase > kNumPhrases) throw IngestError(id + ": bad phrase index");
    if (u.repetition < 1) throw IngestError(id + ": bad repetition index");
    const int n = u.NumFrames();
    if (n < 1) throw IngestError(id + ": no frames");
    for (const auto &[angle, frames] : u.views) {
      if (!IsPoseAngle(angle)) throw IngestError(id + ": unknown view " + std::to_string(angle));
      if (static_cast<int>(frames.size()) != n)
        throw IngestError(id + ": view " + std::to_string(angle) + " has " +
                          std::to_string(frames.size()) + " frames, expected " +
                          std::to_string(n));
      for (const GrayImage &f : frames)
        if (f.width != frame_size || f.height != frame_size ||
            f.pixels.size() != size_t(f.width) * f.height)
          throw IngestError(id + ": frame size does not match corpus frame_size");
    }
    if (u.audio.sample_rate != sample_rate)
      throw IngestError(id + ": audio sample rate " + std::to_string(u.audio.sample_rate));
    if (u.audio.samples.empty()) throw IngestError(id + ": empty audio");
    double frames_in_audio = u.audio.Duration() * fps;
    if (std::abs(frames_in_audio - n) > 1.0)
      throw AlignmentError(id + ": audio covers " + std::to_string(frames_in_audio) +
                           " frames but video has " + std::to_string(n));
  }
}

}  // namespace lipper
