// nn/adam.cc

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

#include "lipper/nn/adam.h"

#include <cmath>

#include "lipper/base/error.h"

namespace lipper {

AdamState AdamState::For(const Network &net, double lr) {
  AdamState s;
  s.lr = lr;
  s.m = net.ZeroGradients();
  s.v = net.ZeroGradients();
  return s;
}

void AdamState::CheckCompatible(const Network &net) const {
  if (step < 0) throw ShapeError("adam: negative step count");
  auto same = [&](const Gradients &g) {
    if (g.size() != net.NumLayers()) return false;
    for (size_t i = 0; i < g.size(); i++) {
      const auto &p = net.layer(i).params();
      if (g[i].size() != p.size()) return false;
      for (size_t j = 0; j < p.size(); j++)
        if (g[i][j].shape() != p[j].shape()) return false;
    }
    return true;
  };
  if (!same(m) || !same(v)) throw ShapeError("adam: moment shapes do not match the network");
}

void AdamStep(Network *net, const Gradients &grads, AdamState *state) {
  state->CheckCompatible(*net);
  if (grads.size() != net->NumLayers())
    throw ShapeError("adam: gradient count does not match the network");
  state->step++;
  const double b1 = state->beta1, b2 = state->beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state->step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state->step));
  for (size_t i = 0; i < net->NumLayers(); i++) {
    auto &params = net->layer(i).params();
    if (grads[i].size() != params.size())
      throw ShapeError("adam: gradient layout mismatch at layer " + std::to_string(i));
    for (size_t j = 0; j < params.size(); j++) {
      Tensor &p = params[j];
      const Tensor &g = grads[i][j];
      Tensor &m = state->m[i][j];
      Tensor &v = state->v[i][j];
      if (g.size() != p.size())
        throw ShapeError("adam: gradient shape mismatch at layer " + std::to_string(i));
      for (size_t k = 0; k < p.size(); k++) {
        m[k] = b1 * m[k] + (1.0 - b1) * g[k];
        v[k] = b2 * v[k] + (1.0 - b2) * g[k] * g[k];
        double mhat = m[k] / c1, vhat = v[k] / c2;
        p[k] -= state->lr * mhat / (std::sqrt(vhat) + state->epsilon);
      }
    }
  }
}

}  // namespace lipper
