// nn/layers.cc

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

#include "lipper/nn/layers.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipper/base/error.h"

namespace lipper {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMat>;
using ConstMatMap = Eigen::Map<const RowMat>;
using VecMap = Eigen::Map<Eigen::RowVectorXd>;
using ConstVecMap = Eigen::Map<const Eigen::RowVectorXd>;

MatMap AsMat(Tensor &t, Eigen::Index rows, Eigen::Index cols) {
  return MatMap(t.data(), rows, cols);
}
ConstMatMap AsMat(const Tensor &t, Eigen::Index rows, Eigen::Index cols) {
  return ConstMatMap(t.data(), rows, cols);
}

[[noreturn]] void BadInput(const Layer &layer, const Shape &shape,
                           const std::string &want) {
  throw ShapeError(layer.Describe() + ": input " + ShapeString(shape) +
                   ", expected " + want);
}

void GlorotUniform(Tensor *t, int fan_in, int fan_out, Rng &rng) {
  double limit = std::sqrt(6.0 / (fan_in + fan_out));
  std::uniform_real_distribution<double> u(-limit, limit);
  for (double &v : t->values()) v = u(rng);
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

const char *LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv3d: return "conv3d";
    case LayerKind::kBiGru: return "bigru";
    case LayerKind::kDense: return "dense";
    case LayerKind::kDropout: return "dropout";
    case LayerKind::kSoftmax: return "softmax";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kFlatten: return "flatten";
    case LayerKind::kMaxPool: return "maxpool";
  }
  return "unknown";
}

size_t Layer::NumParams() const {
  size_t n = 0;
  for (const Tensor &p : params_) n += p.size();
  return n;
}

std::string Layer::Describe() const {
  std::string s = LayerKindName(Kind());
  s += "(";
  auto hyper = Hyper();
  for (size_t i = 0; i < hyper.size(); i++) {
    if (i) s += ",";
    double v = hyper[i];
    s += v == std::floor(v) ? std::to_string(static_cast<long long>(v))
                            : std::to_string(v);
  }
  return s + ")";
}

// ---------------------------------------------------------------- Conv3d

Conv3d::Conv3d(int in_channels, int out_channels, int kt, int kh, int kw,
               bool temporal_same)
    : in_(in_channels), out_(out_channels), kt_(kt), kh_(kh), kw_(kw),
      temporal_same_(temporal_same) {
  if (in_ < 1 || out_ < 1 || kt_ < 1 || kh_ < 1 || kw_ < 1 || kh_ % 2 == 0 ||
      kw_ % 2 == 0 || (temporal_same_ && kt_ % 2 == 0))
    throw ShapeError("conv3d: invalid kernel configuration");
  params_.emplace_back(Shape{kt_, kh_, kw_, in_, out_});
  params_.emplace_back(Shape{out_});
}

std::unique_ptr<Layer> Conv3d::Clone() const { return std::make_unique<Conv3d>(*this); }

std::vector<double> Conv3d::Hyper() const {
  return {double(in_), double(out_), double(kt_), double(kh_), double(kw_),
          temporal_same_ ? 1.0 : 0.0};
}

void Conv3d::Initialize(Rng &rng) {
  int field = kt_ * kh_ * kw_;
  GlorotUniform(&params_[0], field * in_, field * out_, rng);
  params_[1].Fill(0.0);
}

Shape Conv3d::OutputShape(const Shape &in) const {
  if (in.size() != 4 || in[3] != in_)
    BadInput(*this, in, "[T, H, W, " + std::to_string(in_) + "]");
  int t_out = temporal_same_ ? in[0] : in[0] - kt_ + 1;
  if (t_out < 1) BadInput(*this, in, "at least " + std::to_string(kt_) + " frames");
  return {t_out, in[1], in[2], out_};
}

namespace {

struct ConvGeometry {
  int t, h, w, c, t_out, pt, ph, pw, kt, kh, kw;
  int K() const { return kt * kh * kw * c; }
};

// Fills col (H*W x K, row-major) for output frame `to`.
void Im2Col(const double *x, const ConvGeometry &g, int to, double *col) {
  const int k = g.K();
  std::fill(col, col + size_t(g.h) * g.w * k, 0.0);
  for (int dt = 0; dt < g.kt; dt++) {
    int ti = to + dt - g.pt;
    if (ti < 0 || ti >= g.t) continue;
    for (int dy = 0; dy < g.kh; dy++) {
      for (int dx = 0; dx < g.kw; dx++) {
        const int off = ((dt * g.kh + dy) * g.kw + dx) * g.c;
        for (int y = 0; y < g.h; y++) {
          int yi = y + dy - g.ph;
          if (yi < 0 || yi >= g.h) continue;
          int x0 = std::max(0, g.pw - dx), x1 = std::min(g.w, g.w + g.pw - dx);
          for (int xo = x0; xo < x1; xo++) {
            int xi = xo + dx - g.pw;
            const double *src = x + ((size_t(ti) * g.h + yi) * g.w + xi) * g.c;
            double *dst = col + (size_t(y) * g.w + xo) * k + off;
            for (int c = 0; c < g.c; c++) dst[c] = src[c];
          }
        }
      }
    }
  }
}

void Col2Im(const double *col, const ConvGeometry &g, int to, double *dx_out) {
  const int k = g.K();
  for (int dt = 0; dt < g.kt; dt++) {
    int ti = to + dt - g.pt;
    if (ti < 0 || ti >= g.t) continue;
    for (int dy = 0; dy < g.kh; dy++) {
      for (int dx = 0; dx < g.kw; dx++) {
        const int off = ((dt * g.kh + dy) * g.kw + dx) * g.c;
        for (int y = 0; y < g.h; y++) {
          int yi = y + dy - g.ph;
          if (yi < 0 || yi >= g.h) continue;
          int x0 = std::max(0, g.pw - dx), x1 = std::min(g.w, g.w + g.pw - dx);
          for (int xo = x0; xo < x1; xo++) {
            int xi = xo + dx - g.pw;
            double *dst = dx_out + ((size_t(ti) * g.h + yi) * g.w + xi) * g.c;
            const double *src = col + (size_t(y) * g.w + xo) * k + off;
            for (int c = 0; c < g.c; c++) dst[c] += src[c];
          }
        }
      }
    }
  }
}

}  // namespace

Tensor Conv3d::Forward(const Tensor &input, Mode, Rng *, LayerTrace *trace) const {
  Shape out_shape = OutputShape(input.shape());
  ConvGeometry g{input.dim(0), input.dim(1), input.dim(2), in_, out_shape[0],
                 temporal_same_ ? (kt_ - 1) / 2 : 0, kh_ / 2, kw_ / 2, kt_, kh_, kw_};
  const int k = g.K();
  const int hw = g.h * g.w;
  Tensor out(out_shape);
  std::vector<double> col(size_t(hw) * k);
  ConstMatMap kernel = AsMat(params_[0], k, out_);
  ConstVecMap bias(params_[1].data(), out_);
  for (int to = 0; to < g.t_out; to++) {
    Im2Col(input.data(), g, to, col.data());
    MatMap dst(out.data() + size_t(to) * hw * out_, hw, out_);
    dst.noalias() = ConstMatMap(col.data(), hw, k) * kernel;
    dst.rowwise() += bias;
  }
  if (trace) trace->input = input;
  return out;
}

Tensor Conv3d::Backward(const Tensor &grad_output, const LayerTrace &trace,
                        std::span<Tensor> grads) const {
  const Tensor &input = trace.input;
  ConvGeometry g{input.dim(0), input.dim(1), input.dim(2), in_, grad_output.dim(0),
                 temporal_same_ ? (kt_ - 1) / 2 : 0, kh_ / 2, kw_ / 2, kt_, kh_, kw_};
  const int k = g.K();
  const int hw = g.h * g.w;
  Tensor dx(input.shape());
  std::vector<double> col(size_t(hw) * k), dcol(size_t(hw) * k);
  ConstMatMap kernel = AsMat(params_[0], k, out_);
  MatMap dkernel = AsMat(grads[0], k, out_);
  VecMap dbias(grads[1].data(), out_);
  for (int to = 0; to < g.t_out; to++) {
    ConstMatMap dy(grad_output.data() + size_t(to) * hw * out_, hw, out_);
    Im2Col(input.data(), g, to, col.data());
    dkernel.noalias() += ConstMatMap(col.data(), hw, k).transpose() * dy;
    dbias += dy.colwise().sum();
    MatMap(dcol.data(), hw, k).noalias() = dy * kernel.transpose();
    Col2Im(dcol.data(), g, to, dx.data());
  }
  return dx;
}

// ---------------------------------------------------------------- MaxPool

std::unique_ptr<Layer> MaxPool::Clone() const { return std::make_unique<MaxPool>(*this); }

Shape MaxPool::OutputShape(const Shape &in) const {
  if (in.size() != 4 || in[1] < 2 || in[2] < 2) BadInput(*this, in, "[T, H>=2, W>=2, C]");
  return {in[0], in[1] / 2, in[2] / 2, in[3]};
}

Tensor MaxPool::Forward(const Tensor &input, Mode, Rng *, LayerTrace *trace) const {
  Shape os = OutputShape(input.shape());
  const int t = os[0], ho = os[1], wo = os[2], c = os[3];
  const int h = input.dim(1), w = input.dim(2);
  Tensor out(os);
  std::vector<int32_t> idx(out.size());
  size_t o = 0;
  for (int ti = 0; ti < t; ti++)
    for (int y = 0; y < ho; y++)
      for (int x = 0; x < wo; x++)
        for (int ci = 0; ci < c; ci++, o++) {
          double best = -std::numeric_limits<double>::infinity();
          int32_t arg = 0;
          for (int dy = 0; dy < 2; dy++)
            for (int dx = 0; dx < 2; dx++) {
              int32_t i = ((ti * h + 2 * y + dy) * w + 2 * x + dx) * c + ci;
              if (input[i] > best) {
                best = input[i];
                arg = i;
              }
            }
          out[o] = best;
          idx[o] = arg;
        }
  if (trace) {
    trace->indices = std::move(idx);
    trace->saved = {Tensor(Shape{static_cast<int>(input.rank())})};
    for (int i = 0; i < input.rank(); i++) trace->saved[0][i] = input.dim(i);
  }
  return out;
}

Tensor MaxPool::Backward(const Tensor &grad_output, const LayerTrace &trace,
                         std::span<Tensor>) const {
  Shape in_shape;
  for (double d : trace.saved[0].values()) in_shape.push_back(static_cast<int>(d));
  Tensor dx(in_shape);
  for (size_t o = 0; o < grad_output.size(); o++) dx[trace.indices[o]] += grad_output[o];
  return dx;
}

// ---------------------------------------------------------------- Relu

std::unique_ptr<Layer> Relu::Clone() const { return std::make_unique<Relu>(*this); }

Tensor Relu::Forward(const Tensor &input, Mode, Rng *, LayerTrace *trace) const {
  Tensor out = input;
  for (double &v : out.values()) v = v > 0.0 ? v : 0.0;
  if (trace) trace->output = out;
  return out;
}

Tensor Relu::Backward(const Tensor &grad_output, const LayerTrace &trace,
                      std::span<Tensor>) const {
  Tensor dx = grad_output;
  for (size_t i = 0; i < dx.size(); i++)
    if (!(trace.output[i] > 0.0)) dx[i] = 0.0;
  return dx;
}

// ---------------------------------------------------------------- Flatten

std::unique_ptr<Layer> Flatten::Clone() const { return std::make_unique<Flatten>(*this); }

Shape Flatten::OutputShape(const Shape &in) const {
  if (in.empty()) BadInput(*this, in, "rank >= 1");
  if (!keep_leading_) return {static_cast<int>(NumElements(in))};
  Shape rest(in.begin() + 1, in.end());
  return {in[0], static_cast<int>(NumElements(rest))};
}

Tensor Flatten::Forward(const Tensor &input, Mode, Rng *, LayerTrace *trace) const {
  if (trace) trace->indices.assign(input.shape().begin(), input.shape().end());
  return input.Reshaped(OutputShape(input.shape()));
}

Tensor Flatten::Backward(const Tensor &grad_output, const LayerTrace &trace,
                         std::span<Tensor>) const {
  return grad_output.Reshaped(Shape(trace.indices.begin(), trace.indices.end()));
}

// ---------------------------------------------------------------- Dense

Dense::Dense(int in_features, int out_features) : in_(in_features), out_(out_features) {
  if (in_ < 1 || out_ < 1) throw ShapeError("dense: invalid size");
  params_.emplace_back(Shape{in_, out_});
  params_.emplace_back(Shape{out_});
}

std::unique_ptr<Layer> Dense::Clone() const { return std::make_unique<Dense>(*this); }

std::vector<double> Dense::Hyper() const { return {double(in_), double(out_)}; }

void Dense::Initialize(Rng &rng) {
  GlorotUniform(&params_[0], in_, out_, rng);
  params_[1].Fill(0.0);
}

Shape Dense::OutputShape(const Shape &in) const {
  if (in.empty() || in.back() != in_)
    BadInput(*this, in, "[..., " + std::to_string(in_) + "]");
  Shape out = in;
  out.back() = out_;
  return out;
}

Tensor Dense::Forward(const Tensor &input, Mode, Rng *, LayerTrace *trace) const {
  Tensor out(OutputShape(input.shape()));
  const Eigen::Index rows = input.size() / in_;
  MatMap y = AsMat(out, rows, out_);
  y.noalias() = AsMat(input, rows, in_) * AsMat(params_[0], in_, out_);
  y.rowwise() += ConstVecMap(params_[1].data(), out_);
  if (trace) trace->input = input;
  return out;
}

Tensor Dense::Backward(const Tensor &grad_output, const LayerTrace &trace,
                       std::span<Tensor> grads) const {
  const Tensor &input = trace.input;
  const Eigen::Index rows = input.size() / in_;
  ConstMatMap dy = AsMat(grad_output, rows, out_);
  AsMat(grads[0], in_, out_).noalias() += AsMat(input, rows, in_).transpose() * dy;
  VecMap(grads[1].data(), out_) += dy.colwise().sum();
  Tensor dx(input.shape());
  AsMat(dx, rows, in_).noalias() = dy * AsMat(params_[0], in_, out_).transpose();
  return dx;
}

// ---------------------------------------------------------------- Dropout

Dropout::Dropout(double rate) : rate_(rate) {
  if (!(rate >= 0.0 && rate < 1.0)) throw ShapeError("dropout: rate must be in [0, 1)");
}

std::unique_ptr<Layer> Dropout::Clone() const { return std::make_unique<Dropout>(*this); }

Tensor Dropout::Forward(const Tensor &input, Mode mode, Rng *rng,
                        LayerTrace *trace) const {
  if (mode == Mode::kEval || rate_ == 0.0) {
    if (trace) trace->saved.clear();
    return input;
  }
  if (!rng) throw Error("dropout: train mode needs an rng");
  const double keep = 1.0 - rate_;
  Tensor mask(input.shape());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double &m : mask.values()) m = u(*rng) < keep ? 1.0 / keep : 0.0;
  Tensor out = input;
  for (size_t i = 0; i < out.size(); i++) out[i] *= mask[i];
  if (trace) trace->saved = {std::move(mask)};
  return out;
}

Tensor Dropout::Backward(const Tensor &grad_output, const LayerTrace &trace,
                         std::span<Tensor>) const {
  if (trace.saved.empty()) return grad_output;
  Tensor dx = grad_output;
  for (size_t i = 0; i < dx.size(); i++) dx[i] *= trace.saved[0][i];
  return dx;
}

// ---------------------------------------------------------------- Softmax

std::unique_ptr<Layer> Softmax::Clone() const { return std::make_unique<Softmax>(*this); }

Shape Softmax::OutputShape(const Shape &in) const {
  if (in.empty() || in.back() < 1) BadInput(*this, in, "rank >= 1");
  return in;
}

Tensor Softmax::Forward(const Tensor &input, Mode, Rng *, LayerTrace *trace) const {
  OutputShape(input.shape());
  const size_t n = input.shape().back();
  Tensor out = input;
  for (size_t row = 0; row < out.size(); row += n) {
    double *v = out.data() + row;
    double mx = *std::max_element(v, v + n);
    double sum = 0.0;
    for (size_t i = 0; i < n; i++) sum += (v[i] = std::exp(v[i] - mx));
    for (size_t i = 0; i < n; i++) v[i] /= sum;
  }
  if (trace) trace->output = out;
  return out;
}

Tensor Softmax::Backward(const Tensor &grad_output, const LayerTrace &trace,
                         std::span<Tensor>) const {
  const Tensor &y = trace.output;
  const size_t n = y.shape().back();
  Tensor dx(y.shape());
  for (size_t row = 0; row < y.size(); row += n) {
    double dot = 0.0;
    for (size_t i = 0; i < n; i++) dot += grad_output[row + i] * y[row + i];
    for (size_t i = 0; i < n; i++)
      dx[row + i] = y[row + i] * (grad_output[row + i] - dot);
  }
  return dx;
}

// ---------------------------------------------------------------- BiGru

BiGru::BiGru(int in_features, int hidden) : in_(in_features), hidden_(hidden) {
  if (in_ < 1 || hidden_ < 1) throw ShapeError("bigru: invalid size");
  for (int dir = 0; dir < 2; dir++) {
    params_.emplace_back(Shape{in_, 3 * hidden_});
    params_.emplace_back(Shape{hidden_, 3 * hidden_});
    params_.emplace_back(Shape{3 * hidden_});
    params_.emplace_back(Shape{3 * hidden_});
  }
}

std::unique_ptr<Layer> BiGru::Clone() const { return std::make_unique<BiGru>(*this); }

std::vector<double> BiGru::Hyper() const { return {double(in_), double(hidden_)}; }

void BiGru::Initialize(Rng &rng) {
  std::uniform_real_distribution<double> rec(-0.08, 0.08);
  for (int dir = 0; dir < 2; dir++) {
    GlorotUniform(&params_[4 * dir], in_, 3 * hidden_, rng);
    for (double &v : params_[4 * dir + 1].values()) v = rec(rng);
    params_[4 * dir + 2].Fill(0.0);
    params_[4 * dir + 3].Fill(0.0);
  }
}

Shape BiGru::OutputShape(const Shape &in) const {
  if (in.size() != 2 || in[1] != in_)
    BadInput(*this, in, "[T, " + std::to_string(in_) + "]");
  if (in[0] < 1) BadInput(*this, in, "a non-empty time axis");
  return {in[0], 2 * hidden_};
}

// saved layout per direction d (base 5*d): h_prev, r, z, n, gh_n; all [T, H]
// indexed by time step (not by processing order).
Tensor BiGru::Forward(const Tensor &input, Mode, Rng *, LayerTrace *trace) const {
  Shape os = OutputShape(input.shape());
  const int t_len = input.dim(0), h = hidden_;
  Tensor out(os);
  if (trace) {
    trace->input = input;
    trace->saved.assign(10, Tensor(Shape{t_len, h}));
  }
  RowMat gi(t_len, 3 * h);
  Eigen::RowVectorXd hs(h), gh(3 * h);
  for (int dir = 0; dir < 2; dir++) {
    const Tensor &w_i = params_[4 * dir], &w_h = params_[4 * dir + 1];
    ConstVecMap b_i(params_[4 * dir + 2].data(), 3 * h);
    ConstVecMap b_h(params_[4 * dir + 3].data(), 3 * h);
    gi.noalias() = AsMat(input, t_len, in_) * AsMat(w_i, in_, 3 * h);
    gi.rowwise() += b_i;
    hs.setZero();
    for (int step = 0; step < t_len; step++) {
      const int t = dir == 0 ? step : t_len - 1 - step;
      gh.noalias() = hs * AsMat(w_h, h, 3 * h);
      gh += b_h;
      for (int j = 0; j < h; j++) {
        double r = Sigmoid(gi(t, j) + gh(j));
        double z = Sigmoid(gi(t, h + j) + gh(h + j));
        double n = std::tanh(gi(t, 2 * h + j) + r * gh(2 * h + j));
        double prev = hs(j);
        if (trace) {
          trace->saved[5 * dir + 0][t * h + j] = prev;
          trace->saved[5 * dir + 1][t * h + j] = r;
          trace->saved[5 * dir + 2][t * h + j] = z;
          trace->saved[5 * dir + 3][t * h + j] = n;
          trace->saved[5 * dir + 4][t * h + j] = gh(2 * h + j);
        }
        hs(j) = (1.0 - z) * n + z * prev;
        out[size_t(t) * 2 * h + dir * h + j] = hs(j);
      }
    }
  }
  return out;
}

Tensor BiGru::Backward(const Tensor &grad_output, const LayerTrace &trace,
                       std::span<Tensor> grads) const {
  const Tensor &input = trace.input;
  const int t_len = input.dim(0), h = hidden_;
  Tensor dx(input.shape());
  RowMat dgi(t_len, 3 * h);
  Eigen::RowVectorXd dgh(3 * h), carry(h), dh(h), hprev(h);
  for (int dir = 0; dir < 2; dir++) {
    const Tensor &w_i = params_[4 * dir], &w_h = params_[4 * dir + 1];
    const Tensor &s_prev = trace.saved[5 * dir + 0], &s_r = trace.saved[5 * dir + 1],
                 &s_z = trace.saved[5 * dir + 2], &s_n = trace.saved[5 * dir + 3],
                 &s_ghn = trace.saved[5 * dir + 4];
    MatMap dw_h = AsMat(grads[4 * dir + 1], h, 3 * h);
    VecMap db_h(grads[4 * dir + 3].data(), 3 * h);
    carry.setZero();
    for (int step = t_len - 1; step >= 0; step--) {
      const int t = dir == 0 ? step : t_len - 1 - step;
      for (int j = 0; j < h; j++) {
        const size_t o = size_t(t) * h + j;
        double g = grad_output[size_t(t) * 2 * h + dir * h + j] + carry(j);
        double r = s_r[o], z = s_z[o], n = s_n[o], prev = s_prev[o];
        double dn = g * (1.0 - z);
        double dz = g * (prev - n);
        dh(j) = g * z;
        hprev(j) = prev;
        double dn_pre = dn * (1.0 - n * n);
        double dr = dn_pre * s_ghn[o];
        double dr_pre = dr * r * (1.0 - r);
        double dz_pre = dz * z * (1.0 - z);
        dgi(t, j) = dr_pre;
        dgi(t, h + j) = dz_pre;
        dgi(t, 2 * h + j) = dn_pre;
        dgh(j) = dr_pre;
        dgh(h + j) = dz_pre;
        dgh(2 * h + j) = dn_pre * r;
      }
      dw_h.noalias() += hprev.transpose() * dgh;
      db_h += dgh;
      carry = dh;
      carry.noalias() += dgh * AsMat(w_h, h, 3 * h).transpose();
    }
    AsMat(grads[4 * dir], in_, 3 * h).noalias() +=
        AsMat(input, t_len, in_).transpose() * dgi;
    VecMap(grads[4 * dir + 2].data(), 3 * h) += dgi.colwise().sum();
    AsMat(dx, t_len, in_).noalias() += dgi * AsMat(w_i, in_, 3 * h).transpose();
  }
  return dx;
}

// ---------------------------------------------------------------- factory

std::unique_ptr<Layer> MakeLayer(LayerKind kind, std::span<const double> hyper) {
  auto need = [&](size_t n) {
    if (hyper.size() != n)
      throw FormatError(std::string("layer ") + LayerKindName(kind) + ": expected " +
                        std::to_string(n) + " hyperparameters");
  };
  auto i = [&](size_t k) { return static_cast<int>(hyper[k]); };
  switch (kind) {
    case LayerKind::kConv3d:
      need(6);
      return std::make_unique<Conv3d>(i(0), i(1), i(2), i(3), i(4), hyper[5] != 0.0);
    case LayerKind::kBiGru:
      need(2);
      return std::make_unique<BiGru>(i(0), i(1));
    case LayerKind::kDense:
      need(2);
      return std::make_unique<Dense>(i(0), i(1));
    case LayerKind::kDropout:
      need(1);
      return std::make_unique<Dropout>(hyper[0]);
    case LayerKind::kSoftmax:
      need(0);
      return std::make_unique<Softmax>();
    case LayerKind::kRelu:
      need(0);
      return std::make_unique<Relu>();
    case LayerKind::kFlatten:
      need(1);
      return std::make_unique<Flatten>(hyper[0] != 0.0);
    case LayerKind::kMaxPool:
      need(0);
      return std::make_unique<MaxPool>();
  }
  throw FormatError("unknown layer kind " + std::to_string(static_cast<uint32_t>(kind)));
}

}  // namespace lipper
