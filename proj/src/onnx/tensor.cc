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

#include "gruen/onnx/tensor.h"

#include <utility>

#include "gruen/error.h"

namespace gruen::onnx {

const char* DTypeName(DType dtype) {
  switch (dtype) {
    case DType::kFloat:
      return "float";
    case DType::kDouble:
      return "double";
    case DType::kInt64:
      return "int64";
    case DType::kInt32:
      return "int32";
    case DType::kBool:
      return "bool";
  }
  return "?";
}

bool IsFloating(DType dtype) {
  return dtype == DType::kFloat || dtype == DType::kDouble;
}

int64_t NumElements(const Shape& shape) {
  int64_t n = 1;
  for (int64_t d : shape) {
    if (d < 0) throw Error(ErrorCode::kInference, "negative dimension");
    n *= d;
  }
  return n;
}

std::string ShapeString(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

Tensor::Tensor(DType dtype, Shape shape)
    : dtype_(dtype), shape_(std::move(shape)), size_(NumElements(shape_)) {
  if (IsFloating(dtype_)) {
    floats_.assign(size_, 0.0f);
  } else {
    ints_.assign(size_, 0);
  }
}

Tensor Tensor::FromFloats(Shape shape, std::vector<float> values) {
  Tensor t;
  t.dtype_ = DType::kFloat;
  t.shape_ = std::move(shape);
  t.size_ = NumElements(t.shape_);
  if (static_cast<int64_t>(values.size()) != t.size_) {
    throw Error(ErrorCode::kInference,
                "element count mismatch for shape " + ShapeString(t.shape_));
  }
  t.floats_ = std::move(values);
  return t;
}

Tensor Tensor::FromInts(Shape shape, std::vector<int64_t> values,
                        DType dtype) {
  Tensor t;
  t.dtype_ = IsFloating(dtype) ? DType::kInt64 : dtype;
  t.shape_ = std::move(shape);
  t.size_ = NumElements(t.shape_);
  if (static_cast<int64_t>(values.size()) != t.size_) {
    throw Error(ErrorCode::kInference,
                "element count mismatch for shape " + ShapeString(t.shape_));
  }
  t.ints_ = std::move(values);
  return t;
}

Tensor Tensor::ScalarFloat(float value) { return FromFloats({}, {value}); }

Tensor Tensor::ScalarInt(int64_t value) { return FromInts({}, {value}); }

double Tensor::AsDouble(int64_t i) const {
  return floating() ? static_cast<double>(floats_[i])
                    : static_cast<double>(ints_[i]);
}

int64_t Tensor::AsInt(int64_t i) const {
  return floating() ? static_cast<int64_t>(floats_[i]) : ints_[i];
}

Tensor Tensor::Reshaped(Shape shape) const {
  if (NumElements(shape) != size_) {
    throw Error(ErrorCode::kInference, "cannot reshape " +
                                           ShapeString(shape_) + " to " +
                                           ShapeString(shape));
  }
  Tensor t = *this;
  t.shape_ = std::move(shape);
  return t;
}

}  // namespace gruen::onnx
