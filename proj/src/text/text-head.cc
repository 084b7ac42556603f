// text/text-head.cc

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

#include "lipper/text/text-head.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include "lipper/base/error.h"
#include "lipper/nn/adam.h"
#include "lipper/nn/trainer.h"

namespace lipper {

namespace {

std::vector<size_t> Shuffled(size_t n, std::mt19937_64 &rng) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

}  // namespace

TextSplit SplitConfig1(const std::vector<EncodedUtterance> &utts, uint64_t seed) {
  if (utts.size() < 10) throw ProtocolViolation("configuration 1 needs at least 10 utterances");
  std::mt19937_64 rng(seed);
  std::vector<size_t> idx = Shuffled(utts.size(), rng);
  const size_t n_train = static_cast<size_t>(std::lround(0.7 * utts.size()));
  const size_t n_val = static_cast<size_t>(std::lround(0.1 * utts.size()));
  TextSplit s;
  for (size_t i = 0; i < idx.size(); i++) {
    auto &part = i < n_train ? s.train : i < n_train + n_val ? s.val : s.test;
    part.push_back(utts[idx[i]]);
  }
  return s;
}

TextSplit SplitConfig2(const std::vector<EncodedUtterance> &utts, uint64_t seed) {
  std::set<int> ids;
  for (const EncodedUtterance &u : utts) ids.insert(u.speaker);
  if (ids.size() < 4) throw ProtocolViolation("configuration 2 needs at least 4 speakers");
  std::mt19937_64 rng(seed);
  std::vector<int> speakers(ids.begin(), ids.end());
  std::shuffle(speakers.begin(), speakers.end(), rng);
  const size_t n_train = static_cast<size_t>(std::lround(0.7 * speakers.size()));
  std::set<int> train_speakers(speakers.begin(), speakers.begin() + n_train);
  TextSplit s;
  std::vector<const EncodedUtterance *> rest;
  for (const EncodedUtterance &u : utts) {
    if (train_speakers.count(u.speaker))
      s.train.push_back(u);
    else
      rest.push_back(&u);
  }
  std::vector<size_t> idx = Shuffled(rest.size(), rng);
  const size_t n_val = static_cast<size_t>(std::lround(rest.size() / 3.0));
  for (size_t i = 0; i < idx.size(); i++) (i < n_val ? s.val : s.test).push_back(*rest[idx[i]]);
  return s;
}

TextModel TextModel::Build(int code_size, const TextHeadConfig &config) {
  if (code_size < 1 || config.hidden.size() != 3) throw ShapeError("text head needs 3 hidden sizes");
  TextModel m;
  m.code_size_ = code_size;
  m.mean_.assign(code_size, 0.0);
  m.scale_.assign(code_size, 1.0);
  const auto &h = config.hidden;
  m.net_.Emplace<Dense>(code_size, h[0]);
  m.net_.Emplace<Relu>();
  m.net_.Emplace<Dense>(h[0], h[1]);
  m.net_.Emplace<Relu>();
  m.net_.Emplace<Dropout>(config.dropout);
  m.net_.Emplace<Dense>(h[1], h[2]);
  m.net_.Emplace<Relu>();
  m.net_.Emplace<Dropout>(config.dropout);
  m.net_.Emplace<Dense>(h[2], kNumPhraseClasses);
  m.net_.Emplace<Softmax>();
  Rng rng(config.seed);
  m.net_.Initialize(rng);
  return m;
}

void TextModel::SetNormalization(std::vector<double> mean, std::vector<double> scale) {
  if (static_cast<int>(mean.size()) != code_size_ || static_cast<int>(scale.size()) != code_size_)
    throw ShapeError("normalization length does not match code size");
  mean_ = std::move(mean);
  scale_ = std::move(scale);
}

namespace {

std::vector<double> MeanCode(const EncodedUtterance &u, int code_size) {
  if (u.codes.empty()) throw DegenerateInput("encoded utterance has no codes");
  std::vector<double> m(code_size, 0.0);
  for (const EncodedAudioVector &c : u.codes) {
    if (static_cast<int>(c.values.size()) != code_size)
      throw ShapeError("code length does not match the text head");
    for (int i = 0; i < code_size; i++) m[i] += c.values[i];
  }
  for (double &v : m) v /= u.codes.size();
  return m;
}

}  // namespace

Tensor TextModel::Features(const EncodedUtterance &u) const {
  std::vector<double> m = MeanCode(u, code_size_);
  for (int i = 0; i < code_size_; i++) m[i] = (m[i] - mean_[i]) / scale_[i];
  return Tensor(Shape{code_size_}, std::move(m));
}

PhrasePrediction TextModel::Predict(const EncodedUtterance &u) const {
  Tensor p = net_.Predict(Features(u));
  PhrasePrediction out;
  int best = 0;
  for (int i = 0; i < kNumPhraseClasses; i++) {
    out.probabilities[i] = p[i];
    if (p[i] > p[best]) best = i;
  }
  out.phrase = best + 1;
  return out;
}

double TextAccuracy(const TextModel &model, const std::vector<EncodedUtterance> &utts) {
  if (utts.empty()) return 0.0;
  int hit = 0;
  for (const EncodedUtterance &u : utts) hit += model.Predict(u).phrase == u.phrase;
  return static_cast<double>(hit) / utts.size();
}

TextModel TrainTextModel(const std::vector<EncodedUtterance> &train,
                         const std::vector<EncodedUtterance> &val, const TextHeadConfig &config,
                         TextTrainingReport *report) {
  std::set<int> classes;
  for (const EncodedUtterance &u : train) {
    if (u.phrase < 1 || u.phrase > kNumPhraseClasses)
      throw ProtocolViolation("phrase label " + std::to_string(u.phrase) + " out of range");
    classes.insert(u.phrase);
  }
  if (classes.size() < 2) throw ProtocolViolation("text head needs at least two phrase classes");
  const int code_size = static_cast<int>(train.front().codes.at(0).values.size());

  TextModel model = TextModel::Build(code_size, config);
  std::vector<std::vector<double>> feats;
  std::vector<double> mean(code_size, 0.0), scale(code_size, 0.0);
  for (const EncodedUtterance &u : train) {
    feats.push_back(MeanCode(u, code_size));
    for (int i = 0; i < code_size; i++) mean[i] += feats.back()[i];
  }
  for (double &v : mean) v /= feats.size();
  for (const auto &f : feats)
    for (int i = 0; i < code_size; i++) scale[i] += (f[i] - mean[i]) * (f[i] - mean[i]);
  for (double &v : scale) v = std::max(std::sqrt(v / feats.size()), 1e-8);
  model.SetNormalization(mean, scale);

  Dataset ds{train.size(), [&](size_t i) { return model.Features(train[i]); },
             [&](size_t i) {
               Tensor y(Shape{kNumPhraseClasses});
               y[train[i].phrase - 1] = 1.0;
               return y;
             }};
  TextTrainingReport local;
  TextTrainingReport &rep = report ? *report : local;
  rep = {};
  Rng rng(config.seed ^ 0x7e47ull);
  AdamState adam = AdamState::For(model.network(), config.learning_rate);
  Network best = model.network();
  double best_acc = -1.0;
  for (int e = 1; e <= config.epochs; e++) {
    rep.epoch_loss.push_back(
        TrainEpoch(&model.network(), ds, LossKind::kCrossEntropy, config.batch, &adam, &rng));
    if (val.empty()) {
      rep.best_epoch = e;
      continue;
    }
    double acc = TextAccuracy(model, val);
    rep.val_accuracy.push_back(acc);
    if (acc > best_acc) {
      best_acc = acc;
      best = model.network();
      rep.best_epoch = e;
    }
  }
  if (!val.empty()) model.network() = std::move(best);
  return model;
}

void WriteTextAccuracyCsv(std::ostream &os, double config1, double config2) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "accuracy,%.1f,%.1f,95.6\n", 100.0 * config1, 100.0 * config2);
  os << "metric,config-1,config-2,published-reference\n" << buf;
}

}  // namespace lipper
