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

#ifndef GRUEN_ONNX_MODEL_H_
#define GRUEN_ONNX_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gruen/onnx/tensor.h"

namespace gruen::onnx {

// Oldest and newest versions of the ONNX IR / default-domain opset that the
// interpreter accepts.
inline constexpr int64_t kMinIrVersion = 3;
inline constexpr int64_t kMaxIrVersion = 10;
inline constexpr int64_t kMinOpset = 7;
inline constexpr int64_t kMaxOpset = 21;

// An immutable, loaded ONNX inference graph executed by a small CPU
// interpreter. Run() is const and keeps all intermediate state local to the
// call, so one Model may be shared by concurrent callers.
class Model {
 public:
  // Throws Error(kMissingFile) if the file does not exist, Error(kParse) for a
  // malformed protobuf, Error(kUnsupportedVersion) for IR/opset versions or
  // operators the interpreter does not implement.
  static Model LoadFile(const std::filesystem::path& path);
  // base_dir resolves tensors stored as external data.
  static Model LoadBytes(std::string_view bytes,
                         const std::filesystem::path& base_dir = {});

  const std::vector<std::string>& input_names() const;
  const std::vector<std::string>& output_names() const;
  bool HasInput(std::string_view name) const;
  int64_t ir_version() const;
  int64_t opset_version() const;

  // Executes the graph. Feeds not declared as graph inputs are ignored;
  // returns the graph outputs in declaration order.
  std::vector<Tensor> Run(
      const std::vector<std::pair<std::string, Tensor>>& feeds) const;

 private:
  struct Impl;
  explicit Model(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

}  // namespace gruen::onnx

#endif  // GRUEN_ONNX_MODEL_H_
