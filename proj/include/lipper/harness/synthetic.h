// lipper/harness/synthetic.h

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

#ifndef LIPPER_HARNESS_SYNTHETIC_H_
#define LIPPER_HARNESS_SYNTHETIC_H_

#include <cstdint>
#include <random>
#include <vector>

#include "lipper/base/image.h"
#include "lipper/harness/corpus.h"
#include "lipper/pose/pose-classifier.h"

namespace lipper {

/// Mouth state shared by the renderer and the audio generator.  All three
/// coordinates lie in [0, 1].
struct Articulation {
  double height = 0.0;      // vertical opening; drives loudness and F1
  double width = 0.0;       // lip spread; visible frontally, drives F2
  double protrusion = 0.0;  // rounding; visible from the side, drives F3
};

/// Per-speaker appearance and voice.
struct SpeakerStyle {
  bool female = false;
  double pitch_hz = 120.0;
  double formant_scale = 1.0;
  double pace = 1.0;  // > 1 speaks slower
  double mouth_scale = 1.0;
  double lip_tone = 0.4;
  double skin_tone = 0.65;
  double head_offset = 0.0;
};

/// Piecewise-cosine path through articulation key points.
class ArticulationTrack {
 public:
  struct Key {
    double time;
    Articulation value;
  };
  explicit ArticulationTrack(std::vector<Key> keys);
  double Duration() const { return keys_.back().time; }
  Articulation At(double t) const;
  const std::vector<Key> &keys() const { return keys_; }

 private:
  std::vector<Key> keys_;
};

/// Three of every ten speaker slots are female-coded.
bool IsFemaleSlot(int speaker_index);
SpeakerStyle MakeSpeakerStyle(uint64_t seed, int speaker_index);

/// The phrase's articulation path.  Phrase shapes are fixed; speaker pace and
/// a per-(speaker, repetition) jitter derived from `seed` vary the timing and
/// targets.
ArticulationTrack PhraseTrack(int phrase, const SpeakerStyle &style, int speaker_index,
                              int repetition, uint64_t seed);

/// Lip-region crop of `size` x `size` pixels seen from `angle` degrees.  With
/// noise_rng non-null, independent Gaussian pixel noise of `noise_sigma` is
/// added.
GrayImage RenderLips(const Articulation &a, int angle, int size, const SpeakerStyle &style,
                     std::mt19937_64 *noise_rng = nullptr, double noise_sigma = 0.02);

/// Formant-synthesized speech for `num_samples` samples following `track`,
/// quantized to the 16-bit grid.
std::vector<double> SynthesizeAudio(const ArticulationTrack &track, const SpeakerStyle &style,
                                    double sample_rate, int num_samples, uint64_t seed);

struct SyntheticConfig {
  int speakers = 10;
  uint64_t seed = 1;
  int frame_size = 128;
  double fps = 30.0;
  double sample_rate = 20000.0;
  int phrases = kNumPhrases;
  int repetitions = kNumRepetitions;
  /// Views to render; empty renders no video (audio-only corpora for the text
  /// head).
  std::vector<int> views{kPoseAngles.begin(), kPoseAngles.end()};
  double pixel_noise = 0.02;
};

inline constexpr const char *kSyntheticGenerator = "lipper-synth-1";

/// Deterministic in the config.  Throws DegenerateInput for fewer than two
/// speakers.
Corpus GenerateSyntheticCorpus(const SyntheticConfig &config);

/// `per_class` lip crops per pose with random articulation and speaker
/// style, classes interleaved.  Images are rendered on demand and depend only
/// on (seed, index).  With shuffle_labels the labels are permuted while the
/// images keep their true pose.
PoseDataset MakePoseDataset(int per_class, int size, uint64_t seed,
                            bool shuffle_labels = false, double noise_sigma = 0.02);

/// splitmix64-style mixing of a base seed with a list of ids.
uint64_t DeriveSeed(uint64_t base, std::initializer_list<uint64_t> ids);

}  // namespace lipper

#endif  // LIPPER_HARNESS_SYNTHETIC_H_
