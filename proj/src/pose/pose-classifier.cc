// pose/pose-classifier.cc

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

#include "lipper/pose/pose-classifier.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "lipper/base/error.h"
#include "lipper/nn/checkpoint.h"
#include "lipper/nn/trainer.h"

namespace lipper {

int ArgmaxLowestIndex(std::span<const double> values) {
  if (values.empty()) throw Error("argmax of an empty vector");
  int best = 0;
  for (size_t i = 1; i < values.size(); i++)
    if (values[i] > values[best]) best = static_cast<int>(i);
  return best;
}

ConfusionMatrix::ConfusionMatrix(const Counts &counts) : counts_(counts) {
  for (const auto &row : counts_)
    for (int64_t c : row)
      if (c < 0) throw Error("confusion matrix counts must be nonnegative");
}

void ConfusionMatrix::Add(int true_angle, int predicted_angle) {
  counts_[PoseIndex(true_angle)][PoseIndex(predicted_angle)]++;
}

int64_t ConfusionMatrix::RowSum(int row) const {
  return std::accumulate(counts_[row].begin(), counts_[row].end(), int64_t{0});
}

int64_t ConfusionMatrix::Trace() const {
  int64_t t = 0;
  for (int i = 0; i < kNumPoses; i++) t += counts_[i][i];
  return t;
}

int64_t ConfusionMatrix::Total() const {
  int64_t t = 0;
  for (int i = 0; i < kNumPoses; i++) t += RowSum(i);
  return t;
}

double ConfusionMatrix::Accuracy() const {
  int64_t total = Total();
  return total == 0 ? 0.0 : static_cast<double>(Trace()) / static_cast<double>(total);
}

void ConfusionMatrix::WriteCsv(std::ostream &os) const {
  os << "true\\predicted";
  for (int a : kPoseAngles) os << ',' << a;
  os << '\n';
  for (int i = 0; i < kNumPoses; i++) {
    os << kPoseAngles[i];
    for (int j = 0; j < kNumPoses; j++) os << ',' << counts_[i][j];
    os << '\n';
  }
}

PoseClassifier PoseClassifier::Build(const PoseClassifierConfig &config) {
  const int blocks = static_cast<int>(config.channels.size());
  if (blocks < 1 || config.input_size < (1 << blocks) || config.input_size % (1 << blocks))
    throw ShapeError("classifier input size must be divisible by 2^blocks");
  PoseClassifier model;
  model.input_size_ = config.input_size;
  int c = 1;
  for (int width : config.channels) {
    model.net_.Emplace<Conv3d>(c, width, 1, 3, 3, true);
    model.net_.Emplace<Relu>();
    model.net_.Emplace<MaxPool>();
    c = width;
  }
  const int side = config.input_size >> blocks;
  model.net_.Emplace<Flatten>(true);
  model.net_.Emplace<Dense>(side * side * c, config.dense_units);
  model.net_.Emplace<Relu>();
  model.net_.Emplace<Dense>(config.dense_units, kNumPoses);
  model.net_.Emplace<Softmax>();
  Rng rng(config.seed);
  model.net_.Initialize(rng);
  return model;
}

PoseClassifier PoseClassifier::FromNetwork(Network net) {
  int blocks = 0, channels = 0, flat = -1;
  for (size_t i = 0; i < net.NumLayers(); i++) {
    const Layer &l = net.layer(i);
    if (l.Kind() == LayerKind::kMaxPool) blocks++;
    if (auto *c = dynamic_cast<const Conv3d *>(&l)) channels = c->out_channels();
    if (auto *d = dynamic_cast<const Dense *>(&l); d && flat < 0) flat = d->in_features();
  }
  if (blocks == 0 || channels == 0 || flat <= 0 || flat % channels)
    throw FormatError("network is not a pose classifier");
  int side = static_cast<int>(std::lround(std::sqrt(flat / channels)));
  if (side * side * channels != flat) throw FormatError("network is not a pose classifier");
  PoseClassifier model;
  model.input_size_ = side << blocks;
  model.net_ = std::move(net);
  model.net_.OutputShape({1, model.input_size_, model.input_size_, 1});
  return model;
}

Tensor ImagesToTensor(std::span<const GrayImage> images, int size) {
  Tensor t(Shape{static_cast<int>(images.size()), size, size, 1});
  size_t o = 0;
  for (const GrayImage &img : images) {
    if (img.width != size || img.height != size)
      throw ShapeError("expected a " + std::to_string(size) + "x" + std::to_string(size) +
                       " image, got " + std::to_string(img.width) + "x" +
                       std::to_string(img.height));
    for (uint8_t p : img.pixels) t[o++] = p / 255.0;
  }
  return t;
}

PosePrediction PoseClassifier::Classify(const GrayImage &image) const {
  Tensor probs = net_.Predict(ImagesToTensor(std::span(&image, 1), input_size_));
  PosePrediction p;
  std::copy(probs.data(), probs.data() + kNumPoses, p.probabilities.begin());
  p.angle = kPoseAngles[ArgmaxLowestIndex(p.probabilities)];
  return p;
}

void PoseClassifier::Save(const std::filesystem::path &path) const {
  WriteCheckpoint(path, net_);
}

PoseClassifier PoseClassifier::Load(const std::filesystem::path &path) {
  return FromNetwork(std::move(ReadCheckpoint(path).network));
}

PoseTrainingReport TrainClassifier(PoseClassifier *model, const PoseDataset &data,
                                   const PoseClassifierConfig &config) {
  if (data.size() == 0) throw ProtocolViolation("empty classifier training set");
  if (config.batch < 1 || config.micro_batch < 1 || config.epochs < 0)
    throw Error("invalid classifier training configuration");
  PoseTrainingReport report;
  std::array<size_t, kNumPoses> counts{};
  for (int a : data.angles) counts[PoseIndex(a)]++;
  for (size_t c : counts)
    if (c != counts[0]) report.unbalanced = true;
  if (report.unbalanced && !config.allow_unbalanced)
    throw ProtocolViolation("classifier training set has unequal class counts");

  Rng rng(config.seed ^ 0x7053u);
  AdamState adam = AdamState::For(model->network(), config.learning_rate);
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), size_t{0});
  const int size = model->input_size();
  for (int epoch = 0; epoch < config.epochs; epoch++) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (size_t start = 0; start < order.size(); start += config.batch) {
      const size_t end = std::min(order.size(), start + config.batch);
      const double scale = 1.0 / static_cast<double>(end - start);
      Gradients grads = model->network().ZeroGradients();
      for (size_t m = start; m < end; m += config.micro_batch) {
        const size_t m_end = std::min(end, m + config.micro_batch);
        std::vector<GrayImage> images;
        Tensor target(Shape{static_cast<int>(m_end - m), kNumPoses});
        for (size_t i = m; i < m_end; i++) {
          images.push_back(data.image(order[i]));
          target[(i - m) * kNumPoses + PoseIndex(data.angles[order[i]])] = 1.0;
        }
        total += AccumulateGradients(model->network(), ImagesToTensor(images, size), target,
                                     LossKind::kCrossEntropy, scale, &rng, &grads);
      }
      ApplyGradients(&model->network(), grads, &adam);
    }
    report.epoch_loss.push_back(total / static_cast<double>(data.size()));
  }
  return report;
}

ConfusionMatrix EvaluateClassifier(const PoseClassifier &model, const PoseDataset &data) {
  if (data.size() == 0) throw Error("cannot evaluate on an empty dataset");
  ConfusionMatrix cm;
  for (size_t i = 0; i < data.size(); i++)
    cm.Add(data.angles[i], model.Classify(data.image(i)).angle);
  return cm;
}

}  // namespace lipper
