// lipper/text/text-head.h

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

#ifndef LIPPER_TEXT_TEXT_HEAD_H_
#define LIPPER_TEXT_TEXT_HEAD_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lipper/codec/lpc-codec.h"
#include "lipper/nn/network.h"

namespace lipper {

inline constexpr int kNumPhraseClasses = 10;

/// Codes of one spoken phrase; phrase is 1..10.
struct EncodedUtterance {
  std::vector<EncodedAudioVector> codes;
  int speaker = 0;
  int phrase = 0;
};

struct TextSplit {
  std::vector<EncodedUtterance> train, val, test;
};

/// Utterance-level shuffle into 70 / 10 / 20 percent (train / val / test).
TextSplit SplitConfig1(const std::vector<EncodedUtterance> &utts, uint64_t seed);
/// 70% of the speakers train; the remaining speakers' utterances are shuffled
/// and split 1:2 into val and test.
TextSplit SplitConfig2(const std::vector<EncodedUtterance> &utts, uint64_t seed);

struct TextHeadConfig {
  std::vector<int> hidden{1000, 500, 100};
  double dropout = 0.5;
  int batch = 10;
  int epochs = 20;
  double learning_rate = 1e-3;
  uint64_t seed = 1;
};

struct PhrasePrediction {
  int phrase = 0;  // 1..10, ties to the smaller index
  std::array<double, kNumPhraseClasses> probabilities{};
};

/// Mean code over time, z-scored with training statistics, then
/// dense(1000)-relu-dense(500)-relu-dropout-dense(100)-relu-dropout-dense(10)
/// -softmax.
class TextModel {
 public:
  static TextModel Build(int code_size, const TextHeadConfig &config);

  PhrasePrediction Predict(const EncodedUtterance &u) const;
  /// Mean-pooled, normalized feature vector.
  Tensor Features(const EncodedUtterance &u) const;
  void SetNormalization(std::vector<double> mean, std::vector<double> scale);

  Network &network() { return net_; }
  const Network &network() const { return net_; }
  int code_size() const { return code_size_; }

 private:
  Network net_;
  int code_size_ = 0;
  std::vector<double> mean_, scale_;
};

struct TextTrainingReport {
  std::vector<double> epoch_loss;
  std::vector<double> val_accuracy;  // empty without validation data
  int best_epoch = 0;                // 1-based epoch whose weights were kept
};

/// Cross-entropy with Adam; keeps the weights of the epoch with the best
/// validation accuracy (earliest on ties, last epoch without validation
/// data).  Throws ProtocolViolation with fewer than two classes.
TextModel TrainTextModel(const std::vector<EncodedUtterance> &train,
                         const std::vector<EncodedUtterance> &val, const TextHeadConfig &config,
                         TextTrainingReport *report = nullptr);

/// Exact-match count / size.
double TextAccuracy(const TextModel &model, const std::vector<EncodedUtterance> &utts);

/// Two-row CSV laid out like the published comparison table; accuracies in
/// percent with one decimal.
void WriteTextAccuracyCsv(std::ostream &os, double config1, double config2);

}  // namespace lipper

#endif  // LIPPER_TEXT_TEXT_HEAD_H_
