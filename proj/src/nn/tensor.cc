// nn/tensor.cc

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

#include "lipper/nn/tensor.h"

#include <algorithm>
#include <cmath>

#include "lipper/base/error.h"

namespace lipper {

std::string ShapeString(const Shape &shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); i++) {
    if (i) s += ", ";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

size_t NumElements(const Shape &shape) {
  size_t n = 1;
  for (int d : shape) {
    if (d < 0) throw ShapeError("negative dimension in " + ShapeString(shape));
    n *= static_cast<size_t>(d);
  }
  return n;
}

Tensor::Tensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(NumElements(shape_), fill) {}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (NumElements(shape_) != data_.size())
    throw ShapeError("tensor data length " + std::to_string(data_.size()) +
                     " does not match shape " + ShapeString(shape_));
}

void Tensor::Reshape(Shape shape) {
  if (NumElements(shape) != data_.size())
    throw ShapeError("cannot reshape " + ShapeString(shape_) + " to " +
                     ShapeString(shape));
  shape_ = std::move(shape);
}

Tensor Tensor::Reshaped(Shape shape) const {
  Tensor out = *this;
  out.Reshape(std::move(shape));
  return out;
}

void Tensor::Fill(double v) { std::fill(data_.begin(), data_.end(), v); }

void Tensor::AddScaled(const Tensor &other, double scale) {
  if (other.data_.size() != data_.size())
    throw ShapeError("AddScaled: " + ShapeString(shape_) + " vs " +
                     ShapeString(other.shape_));
  for (size_t i = 0; i < data_.size(); i++) data_[i] += scale * other.data_[i];
}

double Tensor::SquaredNorm() const {
  double acc = 0.0;
  for (double v : data_) acc += v * v;
  return acc;
}

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace lipper
