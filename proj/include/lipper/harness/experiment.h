// lipper/harness/experiment.h

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

#ifndef LIPPER_HARNESS_EXPERIMENT_H_
#define LIPPER_HARNESS_EXPERIMENT_H_

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lipper/harness/corpus.h"
#include "lipper/harness/protocols.h"
#include "lipper/recon/reconstructor.h"

namespace lipper {

/// Windows of an utterance: min(frames / frames_per_window,
/// samples / WindowSamples()).
int NumWindows(const Utterance &u, const CodecConfig &codec);
/// Frames [i * frames_per_window, (i + 1) * frames_per_window) of every view.
VideoWindow ExtractWindow(const Utterance &u, int index, const CodecConfig &codec);
/// Codes of the reference audio, one per window.
std::vector<EncodedAudioVector> UtteranceTargets(const Utterance &u, const CodecConfig &codec);
/// Reference audio cut to the samples covered by whole windows.
AudioSignal ReferenceAudio(const Utterance &u, const CodecConfig &codec);

/// One example per window of every utterance, inputs fused lazily.
ReconstructionDataset BuildReconstructionDataset(const std::vector<const Utterance *> &utts,
                                                 const ViewCombination &combination,
                                                 const CodecConfig &codec);

/// Reconstructs and decodes every window of an utterance.
AudioSignal ReconstructUtterance(const Reconstructor &model, const Utterance &u,
                                 uint64_t decode_seed);

using ProgressFn = std::function<void(const std::string &)>;

/// Builds, warm-starts and trains a model on the training side of a split.
Reconstructor TrainOnSplit(const Corpus &corpus, const ExperimentSplit &split,
                           const ViewCombination &combination, ReconstructorConfig config,
                           const ProgressFn &progress = {});

struct UtteranceScore {
  std::string id;
  int speaker = 0;
  int phrase = 0;
  double score = 0.0;
};

/// PESQ-lite of every test utterance against its reference audio.
std::vector<UtteranceScore> ScoreSplit(const Reconstructor &model, const Corpus &corpus,
                                       const ExperimentSplit &split, uint64_t seed);

/// Baseline: codes drawn independently per dimension from a normal
/// distribution fitted to the training targets of the split, repaired and
/// decoded like model output.
std::vector<UtteranceScore> ScoreRandomCodes(const Corpus &corpus, const ExperimentSplit &split,
                                             const CodecConfig &codec, uint64_t seed);

struct CellResult {
  std::string combination;
  std::string group;
  std::string status = "ok";  // "ok" or "diverged"
  int n = 0;
  double mean = 0.0;
  double std = 0.0;
  double seconds = 0.0;  // wall clock, written only on request
};

struct ResultTable {
  std::vector<CellResult> cells;
  const CellResult *Find(const std::string &combination, const std::string &group) const;
  /// "combination,group,status,n,mean,std" (plus ",seconds").  Diverged
  /// cells leave mean and std empty.
  void WriteCsv(std::ostream &os, bool include_seconds = false) const;
  static ResultTable ReadCsv(std::istream &is);
};

/// Concatenates tables; a later cell replaces an earlier one with the same
/// combination and group.
ResultTable MergeTables(const std::vector<ResultTable> &tables);

struct ExperimentConfig {
  /// frame_size is taken from the corpus.
  ReconstructorConfig model;
  /// Speakers for dep / oov; empty means every speaker.
  std::vector<int> speakers;
  /// Held-out pair for indep; zeros pick DefaultHeldoutPair.
  std::array<int, 2> heldout{0, 0};
  uint64_t seed = 1;
  bool random_baseline = true;
  ProgressFn progress;
};

/// Trains one model per split and combination, scores the test side and
/// summarizes per group: speakers ("s01", ...) for dep, phrases ("p01", ...)
/// for oov, "male" / "female" for indep, plus "all".  Baseline rows use the
/// combination name "random".
ResultTable RunExperiment(const Corpus &corpus, Protocol protocol,
                          const std::vector<ViewCombination> &combinations,
                          const ExperimentConfig &config);

struct DelayReport {
  int chunks = 0;
  double window_seconds = 0.0;
  double compute_seconds = 0.0;  // mean per chunk
  double latency_seconds = 0.0;  // window_seconds + compute_seconds
  std::string hardware;
};

/// Times reconstruct + decode for every whole window of a clip.  Throws
/// DegenerateInput for clips shorter than one window.
DelayReport MeasureDelay(const Reconstructor &model, const VideoWindow &clip, double fps);

}  // namespace lipper

#endif  // LIPPER_HARNESS_EXPERIMENT_H_
