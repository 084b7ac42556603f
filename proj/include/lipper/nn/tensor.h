// lipper/nn/tensor.h

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

#ifndef LIPPER_NN_TENSOR_H_
#define LIPPER_NN_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lipper {

using Shape = std::vector<int>;

std::string ShapeString(const Shape &shape);
size_t NumElements(const Shape &shape);

/// Dense row-major array of doubles.  No broadcasting, no views: layers work
/// on whole tensors and reshape explicitly.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  Tensor(Shape shape, std::vector<double> data);

  const Shape &shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_[i]; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double *data() { return data_.data(); }
  const double *data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  const std::vector<double> &vector() const { return data_; }

  double &operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }

  /// Same data, new shape; throws ShapeError when the element count differs.
  void Reshape(Shape shape);
  Tensor Reshaped(Shape shape) const;

  void Fill(double v);
  /// this += scale * other (shapes must match).
  void AddScaled(const Tensor &other, double scale = 1.0);
  double SquaredNorm() const;
  bool AllFinite() const;

  bool operator==(const Tensor &other) const = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

}  // namespace lipper

#endif  // LIPPER_NN_TENSOR_H_
