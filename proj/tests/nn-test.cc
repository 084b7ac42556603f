// tests/nn-test.cc

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

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lipper/base/error.h"
#include "lipper/nn/adam.h"
#include "lipper/nn/checkpoint.h"
#include "lipper/nn/network.h"
#include "lipper/nn/trainer.h"
#include "grad-check.h"
#include "nn-oracles.h"

using namespace lipper;
using namespace gradcheck;

namespace {

void CheckGrad(const GradCheckResult &r) {
  CHECK(r.params < 1e-4);
  CHECK(r.input < 1e-4);
}

constexpr int kShapes = 20;

}  // namespace

TEST_CASE("conv3d identity kernel") {
  Rng rng(1);
  Conv3d conv(1, 1, 3, 3, 3, true);
  conv.params()[0][13] = 1.0;  // centre of the 3x3x3 kernel
  Tensor x = RandomTensor({5, 6, 7, 1}, rng);
  CHECK(conv.Forward(x, Mode::kEval, nullptr, nullptr) == x);
}

TEST_CASE("conv3d matches nested-loop convolution") {
  Rng rng(2);
  for (int trial = 0; trial < 30; trial++) {
    bool same = trial % 2 == 0;
    int kt = 2 * Uniform(rng, 0, 1) + 1, kh = 2 * Uniform(rng, 0, 2) + 1,
        kw = 2 * Uniform(rng, 0, 2) + 1;
    int t = Uniform(rng, kt, 6), h = Uniform(rng, 1, 9), w = Uniform(rng, 1, 9);
    int c = Uniform(rng, 1, 4), o = Uniform(rng, 1, 5);
    Conv3d conv(c, o, kt, kh, kw, same);
    conv.params()[0] = RandomTensor(conv.params()[0].shape(), rng);
    conv.params()[1] = RandomTensor(conv.params()[1].shape(), rng);
    Tensor x = RandomTensor({t, h, w, c}, rng);
    Tensor y = conv.Forward(x, Mode::kEval, nullptr, nullptr);
    auto ref = oracle::NaiveConv3d(x.vector(), t, h, w, c, conv.params()[0].vector(), kt,
                                   kh, kw, o, conv.params()[1].vector(), same);
    REQUIRE(y.size() == ref.size());
    double worst = 0;
    for (size_t i = 0; i < ref.size(); i++) worst = std::max(worst, std::abs(y[i] - ref[i]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("softmax rows sum to one") {
  Rng rng(3);
  Softmax sm;
  for (int trial = 0; trial < 20; trial++) {
    Tensor x = RandomTensor({Uniform(rng, 1, 6), Uniform(rng, 1, 12)}, rng, 10.0);
    Tensor y = sm.Forward(x, Mode::kEval, nullptr, nullptr);
    int n = x.dim(1);
    for (int r = 0; r < x.dim(0); r++) {
      double s = 0;
      for (int i = 0; i < n; i++) s += y[r * n + i];
      CHECK(std::abs(s - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("zero dense layer is a stationary point of mse") {
  Network net;
  net.Emplace<Dense>(4, 3);
  std::vector<LayerTrace> traces;
  Tensor x(Shape{4});
  Tensor out = net.Forward(x, Mode::kTrain, nullptr, &traces);
  LossResult lr = MseLoss(out, Tensor(Shape{3}));
  Gradients g = net.ZeroGradients();
  Tensor dx = net.Backward(lr.grad, traces, &g);
  CHECK(lr.value == 0.0);
  for (const Tensor &t : g[0]) CHECK(t.SquaredNorm() == 0.0);
  CHECK(dx.SquaredNorm() == 0.0);
}

TEST_CASE("gradient check: conv3d") {
  Rng rng(10);
  for (int s = 0; s < kShapes; s++) {
    bool same = s % 2 == 0;
    int kt = 2 * Uniform(rng, 0, 1) + 1, kh = 2 * Uniform(rng, 0, 1) + 1,
        kw = 2 * Uniform(rng, 0, 1) + 1;
    Shape in{Uniform(rng, kt, 4), Uniform(rng, 1, 5), Uniform(rng, 1, 5), Uniform(rng, 1, 3)};
    Network net;
    net.Emplace<Conv3d>(in[3], Uniform(rng, 1, 3), kt, kh, kw, same);
    Randomize(&net, rng);
    Tensor target = RandomTensor(net.OutputShape(in), rng);
    CheckGrad(GradCheck(net, RandomTensor(in, rng), target, LossKind::kMse));
  }
}

TEST_CASE("gradient check: maxpool and relu") {
  Rng rng(11);
  for (int s = 0; s < kShapes; s++) {
    Shape in{Uniform(rng, 1, 3), Uniform(rng, 2, 7), Uniform(rng, 2, 7), Uniform(rng, 1, 3)};
    Network net;
    net.Emplace<MaxPool>();
    Tensor x = RandomTensor(in, rng);
    CheckGrad(GradCheck(net, x, RandomTensor(net.OutputShape(in), rng), LossKind::kMse));

    Network relu;
    relu.Emplace<Relu>();
    for (double &v : x.values()) v = v < 0 ? v - 0.1 : v + 0.1;  // away from the kink
    CheckGrad(GradCheck(relu, x, RandomTensor(in, rng), LossKind::kMse));
  }
}

TEST_CASE("gradient check: flatten and dense") {
  Rng rng(12);
  for (int s = 0; s < kShapes; s++) {
    bool keep = s % 2 == 0;
    Shape in{Uniform(rng, 1, 4), Uniform(rng, 1, 3), Uniform(rng, 1, 3)};
    Network net;
    auto &flat = net.Emplace<Flatten>(keep);
    Shape mid = flat.OutputShape(in);
    net.Emplace<Dense>(mid.back(), Uniform(rng, 1, 5));
    Randomize(&net, rng);
    CheckGrad(GradCheck(net, RandomTensor(in, rng), RandomTensor(net.OutputShape(in), rng),
                        LossKind::kMse));
  }
}

TEST_CASE("gradient check: dropout in train mode") {
  Rng rng(13);
  for (int s = 0; s < kShapes; s++) {
    int n = Uniform(rng, 1, 6);
    Network net;
    net.Emplace<Dense>(n, Uniform(rng, 2, 8));
    net.Emplace<Dropout>(0.5);
    Randomize(&net, rng);
    Shape out = net.OutputShape({n});
    CheckGrad(GradCheck(net, RandomTensor({n}, rng), RandomTensor(out, rng), LossKind::kMse,
                        Mode::kTrain, 100 + s));
  }
}

TEST_CASE("gradient check: softmax with both losses") {
  Rng rng(14);
  for (int s = 0; s < kShapes; s++) {
    int n = Uniform(rng, 1, 5), k = Uniform(rng, 2, 6);
    Network net;
    net.Emplace<Dense>(n, k);
    net.Emplace<Softmax>();
    Randomize(&net, rng);
    Tensor x = RandomTensor({n}, rng);
    CheckGrad(GradCheck(net, x, OneHot(k, Uniform(rng, 0, k - 1)), LossKind::kCrossEntropy));
    CheckGrad(GradCheck(net, x, RandomTensor({k}, rng), LossKind::kMse));
  }
}

TEST_CASE("gradient check: bigru") {
  Rng rng(15);
  for (int s = 0; s < kShapes; s++) {
    int t = Uniform(rng, 1, 5), f = Uniform(rng, 1, 4), h = Uniform(rng, 1, 4);
    Network net;
    net.Emplace<BiGru>(f, h);
    Randomize(&net, rng);
    CheckGrad(GradCheck(net, RandomTensor({t, f}, rng), RandomTensor({t, 2 * h}, rng),
                        LossKind::kMse));
  }
}

TEST_CASE("gradient check: full chain") {
  Rng rng(16);
  for (int s = 0; s < 4; s++) {
    int c = Uniform(rng, 1, 2);
    Network net;
    net.Emplace<Conv3d>(1, c, 3, 3, 3, true);
    net.Emplace<Relu>();
    net.Emplace<MaxPool>();
    net.Emplace<Flatten>(true);
    net.Emplace<BiGru>(4 * c, 3);
    net.Emplace<Flatten>(false);
    net.Emplace<Dense>(3 * 6, 4);
    Randomize(&net, rng);
    Shape in{3, 4, 4, 1};
    CheckGrad(GradCheck(net, RandomTensor(in, rng), RandomTensor({4}, rng), LossKind::kMse));
  }
}

TEST_CASE("softmax plus cross-entropy gradient is (p - y) / batch") {
  Rng rng(17);
  Network net;
  net.Emplace<Softmax>();
  const int batch = 6, k = 5;
  for (int b = 0; b < batch; b++) {
    Tensor x = RandomTensor({k}, rng, 3.0);
    Tensor y = OneHot(k, b % k);
    std::vector<LayerTrace> traces;
    Tensor p = net.Forward(x, Mode::kTrain, nullptr, &traces);
    LossResult lr = CrossEntropyLoss(p, y);
    for (double &g : lr.grad.values()) g /= batch;
    Gradients g = net.ZeroGradients();
    Tensor dx = net.Backward(lr.grad, traces, &g);
    for (int i = 0; i < k; i++) CHECK(std::abs(dx[i] - (p[i] - y[i]) / batch) < 1e-9);
  }
}

TEST_CASE("adam matches a scalar reference") {
  Rng rng(18);
  Network net;
  net.Emplace<Dense>(2, 3);
  Randomize(&net, rng);
  Network start = net;
  AdamState state = AdamState::For(net, 0.01);
  std::vector<Gradients> history;
  for (int s = 0; s < 10; s++) {
    Gradients g = net.ZeroGradients();
    for (auto &layer : g)
      for (Tensor &t : layer) t = RandomTensor(t.shape(), rng);
    AdamStep(&net, g, &state);
    history.push_back(g);
  }
  CHECK(state.step == 10);
  for (size_t j = 0; j < 2; j++)
    for (size_t k = 0; k < net.layer(0).params()[j].size(); k++) {
      std::vector<double> gs;
      for (const auto &g : history) gs.push_back(g[0][j][k]);
      auto traj = oracle::ScalarAdam(start.layer(0).params()[j][k], gs, 0.01);
      CHECK(std::abs(traj.back() - net.layer(0).params()[j][k]) < 1e-12);
    }
}

TEST_CASE("adam zero gradient is a fixed point") {
  Rng rng(19);
  Network net;
  net.Emplace<Dense>(3, 2);
  Randomize(&net, rng);
  Network before = net;
  AdamState state = AdamState::For(net);
  AdamStep(&net, net.ZeroGradients(), &state);
  CHECK(state.step == 1);
  for (size_t j = 0; j < 2; j++) {
    CHECK(net.layer(0).params()[j] == before.layer(0).params()[j]);
    CHECK(state.m[0][j].SquaredNorm() == 0.0);
    CHECK(state.v[0][j].SquaredNorm() == 0.0);
  }
}

TEST_CASE("adam first step is -lr * sign(g)") {
  Rng rng(20);
  Network net;
  net.Emplace<Dense>(3, 4);
  Randomize(&net, rng);
  Network before = net;
  AdamState state = AdamState::For(net, 0.05);
  Gradients g = net.ZeroGradients();
  for (auto &layer : g)
    for (Tensor &t : layer) t = RandomTensor(t.shape(), rng, 10.0);
  AdamStep(&net, g, &state);
  for (size_t j = 0; j < 2; j++)
    for (size_t k = 0; k < g[0][j].size(); k++) {
      double step = net.layer(0).params()[j][k] - before.layer(0).params()[j][k];
      CHECK(std::abs(step + 0.05 * (g[0][j][k] > 0 ? 1 : -1)) < 1e-6);
    }
}

TEST_CASE("bigru matches an unrolled cell") {
  Rng rng(21);
  for (int trial = 0; trial < 10; trial++) {
    int t = Uniform(rng, 1, 8), f = Uniform(rng, 1, 6), h = Uniform(rng, 1, 6);
    BiGru gru(f, h);
    for (Tensor &p : gru.params()) p = RandomTensor(p.shape(), rng, 0.5);
    Tensor x = RandomTensor({t, f}, rng);
    Tensor y = gru.Forward(x, Mode::kEval, nullptr, nullptr);
    REQUIRE(y.shape() == Shape{t, 2 * h});
    const auto &p = gru.params();
    auto fwd = oracle::UnrolledGru(x.vector(), t, f, h, p[0].vector(), p[1].vector(),
                                   p[2].vector(), p[3].vector(), false);
    auto bwd = oracle::UnrolledGru(x.vector(), t, f, h, p[4].vector(), p[5].vector(),
                                   p[6].vector(), p[7].vector(), true);
    double worst = 0;
    for (int s = 0; s < t; s++)
      for (int j = 0; j < h; j++) {
        worst = std::max(worst, std::abs(y[s * 2 * h + j] - fwd[s * h + j]));
        worst = std::max(worst, std::abs(y[s * 2 * h + h + j] - bwd[s * h + j]));
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("bigru time reversal swaps directions") {
  Rng rng(22);
  const int t = 6, f = 3, h = 4;
  BiGru gru(f, h);
  gru.Initialize(rng);
  // Give both directions the same weights so reversal maps one onto the other.
  for (int j = 0; j < 4; j++) gru.params()[4 + j] = gru.params()[j];
  Tensor x = RandomTensor({t, f}, rng);
  Tensor xr(x.shape());
  for (int s = 0; s < t; s++)
    for (int i = 0; i < f; i++) xr[s * f + i] = x[(t - 1 - s) * f + i];
  Tensor y = gru.Forward(x, Mode::kEval, nullptr, nullptr);
  Tensor yr = gru.Forward(xr, Mode::kEval, nullptr, nullptr);
  for (int s = 0; s < t; s++)
    for (int j = 0; j < h; j++) {
      CHECK(std::abs(yr[s * 2 * h + j] - y[(t - 1 - s) * 2 * h + h + j]) < 1e-12);
      CHECK(std::abs(yr[s * 2 * h + h + j] - y[(t - 1 - s) * 2 * h + j]) < 1e-12);
    }
}

TEST_CASE("bigru shape contract") {
  BiGru gru(5, 7);
  for (int t = 1; t < 6; t++) CHECK(gru.OutputShape({t, 5}) == Shape{t, 14});
  CHECK_THROWS_AS(gru.OutputShape({0, 5}), ShapeError);
  CHECK_THROWS_AS(gru.OutputShape({3, 4}), ShapeError);
  CHECK_THROWS_AS(gru.Forward(Tensor(Shape{0, 5}), Mode::kEval, nullptr, nullptr),
                  ShapeError);
}

TEST_CASE("shape errors name the layer") {
  Network net;
  net.Emplace<Dense>(4, 3);
  net.Emplace<Dense>(5, 2);
  try {
    net.Predict(Tensor(Shape{4}));
    FAIL("expected ShapeError");
  } catch (const ShapeError &e) {
    std::string msg = e.what();
    CHECK(msg.find("layer 1") != std::string::npos);
    CHECK(msg.find("dense(5,2)") != std::string::npos);
  }
}

TEST_CASE("inverted dropout preserves the expected activation") {
  Rng rng(23);
  Dropout drop(0.5);
  Tensor x = RandomTensor({64}, rng);
  for (double &v : x.values()) v = std::abs(v) + 0.5;
  double eval_mean = 0, train_mean = 0;
  Tensor eval_out = drop.Forward(x, Mode::kEval, nullptr, nullptr);
  for (double v : eval_out.values()) eval_mean += v;
  const int masks = 10000;
  for (int m = 0; m < masks; m++) {
    Tensor out = drop.Forward(x, Mode::kTrain, &rng, nullptr);
    for (double v : out.values()) train_mean += v;
  }
  train_mean /= masks;
  CHECK(std::abs(train_mean - eval_mean) < 0.02 * eval_mean);
  CHECK(drop.Forward(x, Mode::kEval, nullptr, nullptr) == x);
}

TEST_CASE("eval forward is bit-identical across calls") {
  Rng rng(24);
  Network net;
  net.Emplace<Conv3d>(1, 2, 3, 3, 3, true);
  net.Emplace<Relu>();
  net.Emplace<Flatten>(true);
  net.Emplace<BiGru>(2 * 16, 3);
  net.Emplace<Flatten>(false);
  net.Emplace<Dropout>(0.3);
  net.Emplace<Dense>(5 * 6, 4);
  net.Emplace<Softmax>();
  net.Initialize(rng);
  Tensor x = RandomTensor({5, 4, 4, 1}, rng);
  Tensor a = net.Predict(x);
  for (int i = 0; i < 5; i++) CHECK(net.Predict(x) == a);
}

TEST_CASE("memorizing one sample decreases loss monotonically") {
  Rng rng(25);
  Network net;
  net.Emplace<Dense>(6, 16);
  net.Emplace<Relu>();
  net.Emplace<Dense>(16, 4);
  net.Initialize(rng);
  Tensor x = RandomTensor({6}, rng), y = RandomTensor({4}, rng);
  Dataset data{1, [&](size_t) { return x; }, [&](size_t) { return y; }};
  AdamState adam = AdamState::For(net, 1e-3);
  std::vector<double> losses;
  const size_t idx[] = {0};
  for (int s = 0; s < 200; s++) losses.push_back(TrainStep(&net, data, idx, LossKind::kMse, &adam, &rng));
  for (size_t s = 11; s < losses.size(); s++) CHECK(losses[s] < losses[s - 1]);
  CHECK(losses.back() < 0.5 * losses.front());
}

TEST_CASE("training on a non-finite target raises divergence") {
  Rng rng(26);
  Network net;
  net.Emplace<Dense>(2, 1);
  net.Initialize(rng);
  Network before = net;
  Tensor x(Shape{2}, 1.0), y(Shape{1}, std::nan(""));
  Dataset data{1, [&](size_t) { return x; }, [&](size_t) { return y; }};
  AdamState adam = AdamState::For(net);
  CHECK_THROWS_AS(TrainEpoch(&net, data, LossKind::kMse, 1, &adam, &rng), DivergenceError);
  CHECK(net.layer(0).params()[0] == before.layer(0).params()[0]);
}

TEST_CASE("checkpoint round trip") {
  Rng rng(27);
  Network net;
  net.Emplace<Conv3d>(1, 2, 3, 3, 3, false);
  net.Emplace<MaxPool>();
  net.Emplace<Flatten>(true);
  net.Emplace<BiGru>(2, 3);
  net.Emplace<Flatten>(false);
  net.Emplace<Dropout>(0.25);
  net.Emplace<Dense>(6, 3);
  net.Emplace<Relu>();
  net.Emplace<Softmax>();
  net.Initialize(rng);
  AdamState adam = AdamState::For(net, 0.004);
  Gradients g = net.ZeroGradients();
  for (auto &layer : g)
    for (Tensor &t : layer) t = RandomTensor(t.shape(), rng);
  AdamStep(&net, g, &adam);

  std::stringstream ss;
  WriteCheckpoint(ss, net, &adam);
  std::string bytes = ss.str();
  CHECK(bytes.substr(0, 4) == "LPR1");
  Checkpoint ck = ReadCheckpoint(ss);
  REQUIRE(ck.network.NumLayers() == net.NumLayers());
  for (size_t i = 0; i < net.NumLayers(); i++) {
    CHECK(ck.network.layer(i).Kind() == net.layer(i).Kind());
    CHECK(ck.network.layer(i).Hyper() == net.layer(i).Hyper());
    CHECK(ck.network.layer(i).params() == net.layer(i).params());
  }
  REQUIRE(ck.adam.has_value());
  CHECK(ck.adam->step == 1);
  CHECK(ck.adam->lr == 0.004);
  CHECK(ck.adam->m == adam.m);
  CHECK(ck.adam->v == adam.v);
  Tensor x = RandomTensor({3, 2, 2, 1}, rng);
  CHECK(ck.network.Predict(x) == net.Predict(x));

  std::stringstream plain;
  WriteCheckpoint(plain, net);
  CHECK_FALSE(ReadCheckpoint(plain).adam.has_value());

  std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(ReadCheckpoint(truncated), FormatError);
  std::stringstream bad("LPR2" + bytes.substr(4));
  CHECK_THROWS_AS(ReadCheckpoint(bad), FormatError);
}
