// nn/trainer.cc

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

#include "lipper/nn/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lipper/base/error.h"

namespace lipper {

double AccumulateGradients(const Network &net, const Tensor &input, const Tensor &target,
                           LossKind loss, double grad_scale, Rng *rng, Gradients *grads) {
  std::vector<LayerTrace> traces;
  Tensor out = net.Forward(input, Mode::kTrain, rng, &traces);
  LossResult r = ComputeLoss(loss, out, target);
  if (!std::isfinite(r.value)) throw DivergenceError("training loss is not finite");
  for (double &g : r.grad.values()) g *= grad_scale;
  net.Backward(r.grad, traces, grads);
  return r.value;
}

void ApplyGradients(Network *net, const Gradients &grads, AdamState *adam) {
  for (const auto &layer : grads)
    for (const Tensor &g : layer)
      if (!g.AllFinite()) throw DivergenceError("gradient is not finite");
  AdamStep(net, grads, adam);
}

double TrainStep(Network *net, const Dataset &data, std::span<const size_t> batch,
                 LossKind loss, AdamState *adam, Rng *rng) {
  if (batch.empty()) throw Error("train step: empty batch");
  Gradients grads = net->ZeroGradients();
  double total = 0.0;
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (size_t idx : batch)
    total += AccumulateGradients(*net, data.input(idx), data.target(idx), loss, scale, rng,
                                 &grads);
  ApplyGradients(net, grads, adam);
  return total * scale;
}

double TrainEpoch(Network *net, const Dataset &data, LossKind loss, int batch_size,
                  AdamState *adam, Rng *rng) {
  if (batch_size < 1) throw Error("train epoch: batch size must be positive");
  std::vector<size_t> order(data.size);
  std::iota(order.begin(), order.end(), size_t{0});
  std::shuffle(order.begin(), order.end(), *rng);
  double total = 0.0;
  for (size_t start = 0; start < order.size(); start += batch_size) {
    size_t n = std::min<size_t>(batch_size, order.size() - start);
    total += n * TrainStep(net, data, std::span(order).subspan(start, n), loss, adam, rng);
  }
  return data.size ? total / data.size : 0.0;
}

double MeanLoss(const Network &net, const Dataset &data, LossKind loss) {
  double total = 0.0;
  for (size_t i = 0; i < data.size; i++)
    total += ComputeLoss(loss, net.Predict(data.input(i)), data.target(i)).value;
  return data.size ? total / data.size : 0.0;
}

}  // namespace lipper
