// Copyright 2026 The GRUEN Metric Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRUEN_ONNX_TENSOR_H_
#define GRUEN_ONNX_TENSOR_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gruen::onnx {

// Element types understood by the runtime. Floating types share float32
// storage; every integer and boolean type shares int64 storage. The tag keeps
// the declared type so that Cast and type-dependent ops behave correctly.
enum class DType { kFloat, kDouble, kInt64, kInt32, kBool };

const char* DTypeName(DType dtype);
bool IsFloating(DType dtype);

using Shape = std::vector<int64_t>;

int64_t NumElements(const Shape& shape);
std::string ShapeString(const Shape& shape);

class Tensor {
 public:
  Tensor() = default;
  Tensor(DType dtype, Shape shape);

  static Tensor FromFloats(Shape shape, std::vector<float> values);
  static Tensor FromInts(Shape shape, std::vector<int64_t> values,
                         DType dtype = DType::kInt64);
  static Tensor ScalarFloat(float value);
  static Tensor ScalarInt(int64_t value);

  DType dtype() const { return dtype_; }
  const Shape& shape() const { return shape_; }
  int64_t rank() const { return static_cast<int64_t>(shape_.size()); }
  int64_t size() const { return size_; }
  bool floating() const { return IsFloating(dtype_); }

  std::span<const float> floats() const { return floats_; }
  std::span<float> mutable_floats() { return floats_; }
  std::span<const int64_t> ints() const { return ints_; }
  std::span<int64_t> mutable_ints() { return ints_; }

  // Element i converted to double / int64 regardless of storage.
  double AsDouble(int64_t i) const;
  int64_t AsInt(int64_t i) const;

  // Returns the same data under a new shape with an identical element count.
  Tensor Reshaped(Shape shape) const;

 private:
  DType dtype_ = DType::kFloat;
  Shape shape_;
  int64_t size_ = 0;
  std::vector<float> floats_;
  std::vector<int64_t> ints_;
};

}  // namespace gruen::onnx

#endif  // GRUEN_ONNX_TENSOR_H_
