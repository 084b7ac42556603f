// lipper/nn/trainer.h

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

#ifndef LIPPER_NN_TRAINER_H_
#define LIPPER_NN_TRAINER_H_

#include <functional>
#include <span>

#include "lipper/nn/adam.h"
#include "lipper/nn/network.h"

namespace lipper {

/// Samples are produced on demand so large image sets need not be resident.
struct Dataset {
  size_t size = 0;
  std::function<Tensor(size_t)> input;
  std::function<Tensor(size_t)> target;
};

/// One forward/backward of `input` (which may stack several samples along its
/// leading axis), adding grad_scale * d loss / d params into grads.  Returns
/// the loss value.  Throws DivergenceError when the loss is not finite.
double AccumulateGradients(const Network &net, const Tensor &input, const Tensor &target,
                           LossKind loss, double grad_scale, Rng *rng, Gradients *grads);

/// Throws DivergenceError, leaving the parameters untouched, when a gradient
/// is not finite; otherwise applies one Adam step.
void ApplyGradients(Network *net, const Gradients &grads, AdamState *adam);

/// Forward/backward over `batch` (gradients summed in index order and scaled
/// by 1/|batch|) followed by one Adam step.  Returns the mean sample loss.
/// Throws DivergenceError, leaving the parameters untouched, when the loss or
/// a gradient is not finite.
double TrainStep(Network *net, const Dataset &data, std::span<const size_t> batch,
                 LossKind loss, AdamState *adam, Rng *rng);

/// One shuffled pass in mini-batches; returns the mean sample loss.
double TrainEpoch(Network *net, const Dataset &data, LossKind loss, int batch_size,
                  AdamState *adam, Rng *rng);

/// Eval-mode mean loss over the whole dataset.
double MeanLoss(const Network &net, const Dataset &data, LossKind loss);

}  // namespace lipper

#endif  // LIPPER_NN_TRAINER_H_
