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

#ifndef GRUEN_SRC_ONNX_OPS_H_
#define GRUEN_SRC_ONNX_OPS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gruen/onnx/tensor.h"

namespace gruen::onnx {

struct Attribute {
  enum class Kind { kFloat, kInt, kString, kTensor, kFloats, kInts, kStrings };
  Kind kind = Kind::kInt;
  float f = 0.0f;
  int64_t i = 0;
  std::string s;
  std::vector<float> floats;
  std::vector<int64_t> ints;
  std::vector<std::string> strings;
  std::shared_ptr<const Tensor> tensor;
};

class Attributes {
 public:
  void Set(std::string name, Attribute value) {
    values_[std::move(name)] = std::move(value);
  }
  bool Has(std::string_view name) const { return Find(name) != nullptr; }
  int64_t GetInt(std::string_view name, int64_t fallback) const;
  float GetFloat(std::string_view name, float fallback) const;
  std::string GetString(std::string_view name,
                        const std::string& fallback) const;
  // nullptr when absent.
  const std::vector<int64_t>* GetInts(std::string_view name) const;
  const std::vector<float>* GetFloats(std::string_view name) const;
  const Tensor* GetTensor(std::string_view name) const;

 private:
  const Attribute* Find(std::string_view name) const;

  std::map<std::string, Attribute, std::less<>> values_;
};

struct OpContext {
  const std::string& node_name;
  const std::vector<const Tensor*>& inputs;
  const Attributes& attrs;
  int64_t opset;
  std::size_t num_outputs;

  // nullptr for omitted optional inputs.
  const Tensor* Input(std::size_t i) const {
    return i < inputs.size() ? inputs[i] : nullptr;
  }
  const Tensor& Required(std::size_t i) const;
};

using Kernel = std::vector<Tensor> (*)(const OpContext&);

// nullptr if the operator is not implemented.
Kernel FindKernel(std::string_view op_type);

}  // namespace gruen::onnx

#endif  // GRUEN_SRC_ONNX_OPS_H_
