// lipper/recon/reconstructor.h

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

#ifndef LIPPER_RECON_RECONSTRUCTOR_H_
#define LIPPER_RECON_RECONSTRUCTOR_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lipper/base/image.h"
#include "lipper/base/pose.h"
#include "lipper/codec/lpc-codec.h"
#include "lipper/nn/network.h"

namespace lipper {

/// Nonempty set of pose angles, kept sorted.
class ViewCombination {
 public:
  ViewCombination() = default;
  /// Throws Error on an empty list, duplicates or unknown angles.
  explicit ViewCombination(std::vector<int> angles);
  /// "0+45+60" (any order, surrounding blanks allowed).
  static ViewCombination Parse(const std::string &text);
  /// All 31 nonempty subsets, by cardinality then lexicographically.
  static std::vector<ViewCombination> All();

  const std::vector<int> &angles() const { return angles_; }
  int size() const { return static_cast<int>(angles_.size()); }
  bool Contains(int angle) const;
  std::string ToString() const;

  auto operator<=>(const ViewCombination &other) const = default;

 private:
  std::vector<int> angles_;
};

/// Per-view frame stacks of one window.
struct VideoWindow {
  std::map<int, std::vector<GrayImage>> views;
};

/// Stacks the requested views as channels, ascending angle:
/// [frames, size, size, |views|] with intensities in [0, 1].  Throws
/// MissingView for an absent view and ShapeError for inconsistent frames.
Tensor FuseViews(const VideoWindow &window, const ViewCombination &combination);

struct ReconstructorConfig {
  int frame_size = 128;
  int frames = 5;
  /// Channel widths of the three conv pairs; each pair ends in 2x2 pooling.
  std::vector<int> channels{32, 32, 64, 64, 128, 128};
  int gru1 = 64;
  int gru2 = 32;
  CodecConfig codec;
  double learning_rate = 1e-3;
  int batch = 16;
  int epochs = 60;
  int finetune_epochs = 20;
  uint64_t seed = 1;
};

/// Inputs are produced on demand; every example records the views it was
/// fused from.
struct ReconstructionDataset {
  std::vector<ViewCombination> combinations;
  std::function<Tensor(size_t)> input;
  std::vector<EncodedAudioVector> targets;
  size_t size() const { return targets.size(); }
};

struct ReconstructorTrainingReport {
  std::vector<double> epoch_loss;  // training-loss curve, fine-tune epochs last
};

class Reconstructor {
 public:
  /// STCNN trunk, two BiGRUs and a dense code layer; input channels =
  /// |combination|.
  static Reconstructor Build(const ViewCombination &combination,
                             const ReconstructorConfig &config);

  /// Raw network output for a fused input (no repair).
  Tensor Forward(const Tensor &fused) const;
  /// Fuses, runs the network and repairs the LSP blocks.
  EncodedAudioVector Reconstruct(const VideoWindow &window) const;
  EncodedAudioVector ReconstructFused(const Tensor &fused) const;

  /// Sets the output bias to the mean target (regression warm start).
  void InitializeOutputBias(const std::vector<EncodedAudioVector> &targets);

  const ViewCombination &combination() const { return combination_; }
  const ReconstructorConfig &config() const { return config_; }
  Network &network() { return net_; }
  const Network &network() const { return net_; }

  /// Writes the network checkpoint to `path` and its description to
  /// `path` + ".meta.json".
  void Save(const std::filesystem::path &path) const;
  static Reconstructor Load(const std::filesystem::path &path);

 private:
  Network net_;
  ViewCombination combination_;
  ReconstructorConfig config_;
};

/// MSE regression with Adam: config.epochs at the base learning rate, then
/// config.finetune_epochs at a tenth of it.  Throws ProtocolViolation when an
/// example's combination differs from the model's.
ReconstructorTrainingReport TrainReconstructor(Reconstructor *model,
                                               const ReconstructionDataset &data);

/// Mean quality score per view combination.
class CombinationScoreTable {
 public:
  /// The published speaker-dependent means for all 31 combinations.
  static const CombinationScoreTable &Published();

  void Set(const ViewCombination &c, double score);
  bool Has(const ViewCombination &c) const { return scores_.count(c) > 0; }
  double Get(const ViewCombination &c) const;
  const std::map<ViewCombination, double> &scores() const { return scores_; }

  /// "combination,score" with a header row.
  void WriteCsv(std::ostream &os) const;
  static CombinationScoreTable ReadCsv(std::istream &is);

 private:
  std::map<ViewCombination, double> scores_;
};

/// Highest-scoring nonempty subset of `available`; ties go to the smaller
/// subset, then to the lexicographically smaller angle list.  Throws NoViews
/// when nothing is available and Error when the table lacks a subset.
ViewCombination SelectViewCombination(const std::set<int> &available,
                                      const CombinationScoreTable &table);

}  // namespace lipper

#endif  // LIPPER_RECON_RECONSTRUCTOR_H_
