// lipper/nn/network.h

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

#ifndef LIPPER_NN_NETWORK_H_
#define LIPPER_NN_NETWORK_H_

#include <memory>
#include <vector>

#include "lipper/nn/layers.h"

namespace lipper {

/// One tensor list per layer, in the layout of Layer::params().
using Gradients = std::vector<std::vector<Tensor>>;

/// A chain of layers applied in order.
class Network {
 public:
  Network() = default;
  Network(const Network &other);
  Network &operator=(const Network &other);
  Network(Network &&) = default;
  Network &operator=(Network &&) = default;

  void Add(std::unique_ptr<Layer> layer);
  template <class L, class... Args>
  L &Emplace(Args &&...args) {
    auto layer = std::make_unique<L>(std::forward<Args>(args)...);
    L &ref = *layer;
    Add(std::move(layer));
    return ref;
  }

  size_t NumLayers() const { return layers_.size(); }
  Layer &layer(size_t i) { return *layers_[i]; }
  const Layer &layer(size_t i) const { return *layers_[i]; }
  size_t NumParams() const;

  /// Glorot / recurrent-uniform initialization of every parametric layer.
  void Initialize(Rng &rng);

  /// Propagates a shape through the chain; ShapeError names the layer.
  Shape OutputShape(const Shape &input) const;

  /// With traces non-null, fills one LayerTrace per layer for Backward.
  Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                 std::vector<LayerTrace> *traces = nullptr) const;
  Tensor Predict(const Tensor &input) const {
    return Forward(input, Mode::kEval, nullptr);
  }

  /// Accumulates into grads (see ZeroGradients) and returns d loss / d input.
  Tensor Backward(const Tensor &grad_output, const std::vector<LayerTrace> &traces,
                  Gradients *grads) const;
  Gradients ZeroGradients() const;

 private:
  std::vector<std::unique_ptr<Layer>> layers_;
};

enum class LossKind { kMse, kCrossEntropy };

struct LossResult {
  double value = 0.0;
  Tensor grad;  // d value / d prediction
};

/// Mean squared error over all elements.
LossResult MseLoss(const Tensor &prediction, const Tensor &target);
/// -sum target * ln(p) over probabilities p (softmax output); per sample.
LossResult CrossEntropyLoss(const Tensor &probabilities, const Tensor &target);
LossResult ComputeLoss(LossKind kind, const Tensor &prediction, const Tensor &target);

}  // namespace lipper

#endif  // LIPPER_NN_NETWORK_H_
