// lipper/pose/pose-classifier.h

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

#ifndef LIPPER_POSE_POSE_CLASSIFIER_H_
#define LIPPER_POSE_POSE_CLASSIFIER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "lipper/base/image.h"
#include "lipper/base/pose.h"
#include "lipper/nn/network.h"

namespace lipper {

inline constexpr int kNumPoses = 5;

/// Index of the largest entry; ties go to the smaller index (smaller angle).
int ArgmaxLowestIndex(std::span<const double> values);

/// Rows are true poses, columns predictions, both in kPoseAngles order.
class ConfusionMatrix {
 public:
  using Counts = std::array<std::array<int64_t, kNumPoses>, kNumPoses>;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(const Counts &counts);

  void Add(int true_angle, int predicted_angle);
  const Counts &counts() const { return counts_; }
  int64_t RowSum(int row) const;
  int64_t Trace() const;
  int64_t Total() const;
  /// Trace / total; 0 for an empty matrix.
  double Accuracy() const;
  /// Header row of predicted angles, then one row per true angle.
  void WriteCsv(std::ostream &os) const;
  bool operator==(const ConfusionMatrix &other) const = default;

 private:
  Counts counts_{};
};

struct PoseClassifierConfig {
  int input_size = 224;
  std::vector<int> channels{8, 16, 32, 64};
  int dense_units = 1024;
  int batch = 100;
  int epochs = 30;
  double learning_rate = 1e-3;
  uint64_t seed = 1;
  /// Images stacked into one forward pass; only affects speed.
  int micro_batch = 20;
  /// Train on unbalanced class counts instead of raising ProtocolViolation.
  bool allow_unbalanced = false;
};

struct PosePrediction {
  int angle = 0;
  std::array<double, kNumPoses> probabilities{};
};

/// Labels are available up front; images are produced on demand.
struct PoseDataset {
  std::vector<int> angles;
  std::function<GrayImage(size_t)> image;
  size_t size() const { return angles.size(); }
};

class PoseClassifier {
 public:
  /// conv(3x3)+relu+2x2 pool blocks, dense + relu, dense 5, softmax.
  static PoseClassifier Build(const PoseClassifierConfig &config);
  /// Wraps a trained network; input size is recovered from its shapes.
  static PoseClassifier FromNetwork(Network net);

  /// Throws ShapeError unless the image is input_size x input_size.
  PosePrediction Classify(const GrayImage &image) const;

  int input_size() const { return input_size_; }
  Network &network() { return net_; }
  const Network &network() const { return net_; }

  void Save(const std::filesystem::path &path) const;
  static PoseClassifier Load(const std::filesystem::path &path);

 private:
  Network net_;
  int input_size_ = 0;
};

/// Stacks images into [n, size, size, 1] with intensities in [0, 1].
Tensor ImagesToTensor(std::span<const GrayImage> images, int size);

struct PoseTrainingReport {
  std::vector<double> epoch_loss;  // mean cross-entropy per epoch
  bool unbalanced = false;
};

/// Mini-batch Adam on cross-entropy.  Unequal class counts raise
/// ProtocolViolation unless config.allow_unbalanced is set.
PoseTrainingReport TrainClassifier(PoseClassifier *model, const PoseDataset &data,
                                   const PoseClassifierConfig &config);

ConfusionMatrix EvaluateClassifier(const PoseClassifier &model, const PoseDataset &data);

}  // namespace lipper

#endif  // LIPPER_POSE_POSE_CLASSIFIER_H_
