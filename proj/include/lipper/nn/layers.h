// lipper/nn/layers.h

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

#ifndef LIPPER_NN_LAYERS_H_
#define LIPPER_NN_LAYERS_H_

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lipper/nn/tensor.h"

namespace lipper {

using Rng = std::mt19937_64;

enum class Mode { kTrain, kEval };

/// Stable ids; they are written into checkpoints.
enum class LayerKind : uint32_t {
  kConv3d = 1,
  kBiGru = 2,
  kDense = 3,
  kDropout = 4,
  kSoftmax = 5,
  kRelu = 6,
  kFlatten = 7,
  kMaxPool = 8,
};

const char *LayerKindName(LayerKind kind);

/// What a layer remembers from Forward for its Backward pass.
struct LayerTrace {
  Tensor input;
  Tensor output;
  std::vector<Tensor> saved;
  std::vector<int32_t> indices;
};

/// A layer owns its parameters; Forward and Backward are const so one model
/// can serve concurrent inference calls.  Per-call state lives in LayerTrace.
class Layer {
 public:
  virtual ~Layer() = default;

  virtual LayerKind Kind() const = 0;
  virtual std::unique_ptr<Layer> Clone() const = 0;
  /// Throws ShapeError when the input shape is not accepted.
  virtual Shape OutputShape(const Shape &input) const = 0;

  /// rng is used only by train-mode dropout and may be null otherwise.  When
  /// trace is non-null it receives what Backward needs.
  virtual Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                         LayerTrace *trace) const = 0;
  /// Accumulates (+=) parameter gradients into param_grads (same layout as
  /// params()) and returns the gradient with respect to the input.
  virtual Tensor Backward(const Tensor &grad_output, const LayerTrace &trace,
                          std::span<Tensor> param_grads) const = 0;

  /// Hyperparameters, enough to rebuild the layer (checkpoint payload).
  virtual std::vector<double> Hyper() const = 0;

  std::vector<Tensor> &params() { return params_; }
  const std::vector<Tensor> &params() const { return params_; }
  size_t NumParams() const;

  std::string Describe() const;

 protected:
  std::vector<Tensor> params_;
};

/// Kernel [kt, kh, kw, in, out], bias [out].  Input [T, H, W, in]; stride 1,
/// same padding on H and W, temporal padding per `temporal_same`.
class Conv3d : public Layer {
 public:
  Conv3d(int in_channels, int out_channels, int kt, int kh, int kw,
         bool temporal_same);
  LayerKind Kind() const override { return LayerKind::kConv3d; }
  std::unique_ptr<Layer> Clone() const override;
  Shape OutputShape(const Shape &input) const override;
  Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                 LayerTrace *trace) const override;
  Tensor Backward(const Tensor &grad_output, const LayerTrace &trace,
                  std::span<Tensor> param_grads) const override;
  std::vector<double> Hyper() const override;
  void Initialize(Rng &rng);

  int in_channels() const { return in_; }
  int out_channels() const { return out_; }

 private:
  int in_, out_, kt_, kh_, kw_;
  bool temporal_same_;
};

/// 2x2 max pooling over the two spatial axes of [T, H, W, C] (floor).
class MaxPool : public Layer {
 public:
  LayerKind Kind() const override { return LayerKind::kMaxPool; }
  std::unique_ptr<Layer> Clone() const override;
  Shape OutputShape(const Shape &input) const override;
  Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                 LayerTrace *trace) const override;
  Tensor Backward(const Tensor &grad_output, const LayerTrace &trace,
                  std::span<Tensor> param_grads) const override;
  std::vector<double> Hyper() const override { return {}; }
};

class Relu : public Layer {
 public:
  LayerKind Kind() const override { return LayerKind::kRelu; }
  std::unique_ptr<Layer> Clone() const override;
  Shape OutputShape(const Shape &input) const override { return input; }
  Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                 LayerTrace *trace) const override;
  Tensor Backward(const Tensor &grad_output, const LayerTrace &trace,
                  std::span<Tensor> param_grads) const override;
  std::vector<double> Hyper() const override { return {}; }
};

/// keep_leading: [T, ...] -> [T, prod(...)]; otherwise everything -> [N].
class Flatten : public Layer {
 public:
  explicit Flatten(bool keep_leading) : keep_leading_(keep_leading) {}
  LayerKind Kind() const override { return LayerKind::kFlatten; }
  std::unique_ptr<Layer> Clone() const override;
  Shape OutputShape(const Shape &input) const override;
  Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                 LayerTrace *trace) const override;
  Tensor Backward(const Tensor &grad_output, const LayerTrace &trace,
                  std::span<Tensor> param_grads) const override;
  std::vector<double> Hyper() const override { return {keep_leading_ ? 1.0 : 0.0}; }

 private:
  bool keep_leading_;
};

/// Affine map on the last axis: [..., in] -> [..., out].  Weight [in, out].
class Dense : public Layer {
 public:
  Dense(int in_features, int out_features);
  LayerKind Kind() const override { return LayerKind::kDense; }
  std::unique_ptr<Layer> Clone() const override;
  Shape OutputShape(const Shape &input) const override;
  Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                 LayerTrace *trace) const override;
  Tensor Backward(const Tensor &grad_output, const LayerTrace &trace,
                  std::span<Tensor> param_grads) const override;
  std::vector<double> Hyper() const override;
  void Initialize(Rng &rng);

  int in_features() const { return in_; }
  int out_features() const { return out_; }

 private:
  int in_, out_;
};

/// Inverted dropout: train mode zeroes with probability `rate` and divides the
/// survivors by 1 - rate; eval mode is the identity.
class Dropout : public Layer {
 public:
  explicit Dropout(double rate);
  LayerKind Kind() const override { return LayerKind::kDropout; }
  std::unique_ptr<Layer> Clone() const override;
  Shape OutputShape(const Shape &input) const override { return input; }
  Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                 LayerTrace *trace) const override;
  Tensor Backward(const Tensor &grad_output, const LayerTrace &trace,
                  std::span<Tensor> param_grads) const override;
  std::vector<double> Hyper() const override { return {rate_}; }
  double rate() const { return rate_; }

 private:
  double rate_;
};

/// Softmax over the last axis.
class Softmax : public Layer {
 public:
  LayerKind Kind() const override { return LayerKind::kSoftmax; }
  std::unique_ptr<Layer> Clone() const override;
  Shape OutputShape(const Shape &input) const override;
  Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                 LayerTrace *trace) const override;
  Tensor Backward(const Tensor &grad_output, const LayerTrace &trace,
                  std::span<Tensor> param_grads) const override;
  std::vector<double> Hyper() const override { return {}; }
};

/// Bidirectional GRU, [T, in] -> [T, 2 * hidden] with the forward direction
/// in the first half of each row.  Gate order inside the 3H blocks is
/// (reset, update, candidate); the candidate uses r * (W_hn h + b_hn).
/// Params per direction: W_i [in, 3H], W_h [H, 3H], b_i [3H], b_h [3H];
/// forward direction first.
class BiGru : public Layer {
 public:
  BiGru(int in_features, int hidden);
  LayerKind Kind() const override { return LayerKind::kBiGru; }
  std::unique_ptr<Layer> Clone() const override;
  Shape OutputShape(const Shape &input) const override;
  Tensor Forward(const Tensor &input, Mode mode, Rng *rng,
                 LayerTrace *trace) const override;
  Tensor Backward(const Tensor &grad_output, const LayerTrace &trace,
                  std::span<Tensor> param_grads) const override;
  std::vector<double> Hyper() const override;
  void Initialize(Rng &rng);

  int hidden() const { return hidden_; }
  int in_features() const { return in_; }

 private:
  int in_, hidden_;
};

/// Builds a layer of `kind` from Hyper() values, parameters zeroed.
std::unique_ptr<Layer> MakeLayer(LayerKind kind, std::span<const double> hyper);

}  // namespace lipper

#endif  // LIPPER_NN_LAYERS_H_
