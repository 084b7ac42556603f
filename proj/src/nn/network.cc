// nn/network.cc

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

#include "lipper/nn/network.h"

#include <algorithm>
#include <cmath>

#include "lipper/base/error.h"

namespace lipper {

Network::Network(const Network &other) {
  for (const auto &l : other.layers_) layers_.push_back(l->Clone());
}

Network &Network::operator=(const Network &other) {
  if (this != &other) {
    Network copy(other);
    layers_ = std::move(copy.layers_);
  }
  return *this;
}

void Network::Add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }

size_t Network::NumParams() const {
  size_t n = 0;
  for (const auto &l : layers_) n += l->NumParams();
  return n;
}

void Network::Initialize(Rng &rng) {
  for (auto &l : layers_) {
    if (auto *c = dynamic_cast<Conv3d *>(l.get())) c->Initialize(rng);
    else if (auto *d = dynamic_cast<Dense *>(l.get())) d->Initialize(rng);
    else if (auto *g = dynamic_cast<BiGru *>(l.get())) g->Initialize(rng);
  }
}

namespace {

[[noreturn]] void Rethrow(size_t index, const ShapeError &e) {
  throw ShapeError("layer " + std::to_string(index) + ": " + e.what());
}

}  // namespace

Shape Network::OutputShape(const Shape &input) const {
  Shape s = input;
  for (size_t i = 0; i < layers_.size(); i++) {
    try {
      s = layers_[i]->OutputShape(s);
    } catch (const ShapeError &e) {
      Rethrow(i, e);
    }
  }
  return s;
}

Tensor Network::Forward(const Tensor &input, Mode mode, Rng *rng,
                        std::vector<LayerTrace> *traces) const {
  if (traces) traces->assign(layers_.size(), LayerTrace{});
  Tensor x = input;
  for (size_t i = 0; i < layers_.size(); i++) {
    try {
      x = layers_[i]->Forward(x, mode, rng, traces ? &(*traces)[i] : nullptr);
    } catch (const ShapeError &e) {
      Rethrow(i, e);
    }
  }
  return x;
}

Tensor Network::Backward(const Tensor &grad_output, const std::vector<LayerTrace> &traces,
                         Gradients *grads) const {
  if (traces.size() != layers_.size() || grads->size() != layers_.size())
    throw ShapeError("backward: trace or gradient count does not match the network");
  Tensor g = grad_output;
  for (size_t i = layers_.size(); i-- > 0;)
    g = layers_[i]->Backward(g, traces[i], (*grads)[i]);
  return g;
}

Gradients Network::ZeroGradients() const {
  Gradients g(layers_.size());
  for (size_t i = 0; i < layers_.size(); i++)
    for (const Tensor &p : layers_[i]->params()) g[i].emplace_back(p.shape());
  return g;
}

LossResult MseLoss(const Tensor &prediction, const Tensor &target) {
  if (prediction.size() != target.size() || prediction.empty())
    throw ShapeError("mse: prediction " + ShapeString(prediction.shape()) +
                     " vs target " + ShapeString(target.shape()));
  LossResult r;
  r.grad = Tensor(prediction.shape());
  const double n = static_cast<double>(prediction.size());
  for (size_t i = 0; i < prediction.size(); i++) {
    double d = prediction[i] - target[i];
    r.value += d * d;
    r.grad[i] = 2.0 * d / n;
  }
  r.value /= n;
  return r;
}

LossResult CrossEntropyLoss(const Tensor &probabilities, const Tensor &target) {
  if (probabilities.size() != target.size() || probabilities.empty())
    throw ShapeError("cross-entropy: prediction " + ShapeString(probabilities.shape()) +
                     " vs target " + ShapeString(target.shape()));
  constexpr double kTiny = 1e-300;
  LossResult r;
  r.grad = Tensor(probabilities.shape());
  for (size_t i = 0; i < probabilities.size(); i++) {
    if (target[i] == 0.0) continue;
    double p = std::max(probabilities[i], kTiny);
    r.value -= target[i] * std::log(p);
    r.grad[i] = -target[i] / p;
  }
  return r;
}

LossResult ComputeLoss(LossKind kind, const Tensor &prediction, const Tensor &target) {
  return kind == LossKind::kMse ? MseLoss(prediction, target)
                                : CrossEntropyLoss(prediction, target);
}

}  // namespace lipper
