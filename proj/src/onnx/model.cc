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

#include "gruen/onnx/model.h"

#include <google/protobuf/io/coded_stream.h>

#include <climits>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "gruen/error.h"
#include "onnx_ir.pb.h"
#include "ops.h"

namespace gruen::onnx {
namespace {

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

template <typename T>
std::vector<T> DecodeRaw(const std::string& raw, int64_t count,
                         const std::string& name) {
  if (static_cast<int64_t>(raw.size()) != count * static_cast<int64_t>(sizeof(T))) {
    throw Error(ErrorCode::kParse, "raw data size mismatch for tensor " + name);
  }
  std::vector<T> out(count);
  if (count > 0) std::memcpy(out.data(), raw.data(), raw.size());
  return out;
}

std::string ExternalBytes(const onnx_ir::TensorProto& proto,
                          const std::filesystem::path& base_dir) {
  std::string location;
  int64_t offset = 0;
  int64_t length = -1;
  for (const auto& kv : proto.external_data()) {
    if (kv.key() == "location") location = kv.value();
    if (kv.key() == "offset") offset = std::stoll(kv.value());
    if (kv.key() == "length") length = std::stoll(kv.value());
  }
  if (location.empty()) {
    throw Error(ErrorCode::kParse,
                "external tensor without location: " + proto.name());
  }
  const std::filesystem::path path = base_dir / location;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kMissingFile,
                "missing external data file " + path.string());
  }
  in.seekg(0, std::ios::end);
  const int64_t file_size = in.tellg();
  if (length < 0) length = file_size - offset;
  if (offset < 0 || offset + length > file_size) {
    throw Error(ErrorCode::kParse,
                "external data range out of bounds for " + proto.name());
  }
  std::string bytes(length, '\0');
  in.seekg(offset);
  in.read(bytes.data(), length);
  return bytes;
}

}  // namespace

Tensor TensorFromProto(const onnx_ir::TensorProto& proto,
                       const std::filesystem::path& base_dir) {
  Shape shape(proto.dims().begin(), proto.dims().end());
  const int64_t count = NumElements(shape);
  std::string external;
  const bool is_external =
      proto.data_location() == onnx_ir::TensorProto::EXTERNAL;
  if (is_external) external = ExternalBytes(proto, base_dir);
  const std::string& raw = is_external ? external : proto.raw_data();
  const bool has_raw = is_external || proto.has_raw_data();

  switch (proto.data_type()) {
    case onnx_ir::TensorProto::FLOAT: {
      std::vector<float> v =
          has_raw ? DecodeRaw<float>(raw, count, proto.name())
                  : std::vector<float>(proto.float_data().begin(),
                                       proto.float_data().end());
      return Tensor::FromFloats(std::move(shape), std::move(v));
    }
    case onnx_ir::TensorProto::DOUBLE: {
      std::vector<double> d =
          has_raw ? DecodeRaw<double>(raw, count, proto.name())
                  : std::vector<double>(proto.double_data().begin(),
                                        proto.double_data().end());
      Tensor t = Tensor::FromFloats(std::move(shape),
                                    std::vector<float>(d.begin(), d.end()));
      Tensor out(DType::kDouble, t.shape());
      std::copy(t.floats().begin(), t.floats().end(),
                out.mutable_floats().begin());
      return out;
    }
    case onnx_ir::TensorProto::INT64: {
      std::vector<int64_t> v =
          has_raw ? DecodeRaw<int64_t>(raw, count, proto.name())
                  : std::vector<int64_t>(proto.int64_data().begin(),
                                         proto.int64_data().end());
      return Tensor::FromInts(std::move(shape), std::move(v));
    }
    case onnx_ir::TensorProto::INT32: {
      std::vector<int64_t> v;
      if (has_raw) {
        auto d = DecodeRaw<int32_t>(raw, count, proto.name());
        v.assign(d.begin(), d.end());
      } else {
        v.assign(proto.int32_data().begin(), proto.int32_data().end());
      }
      return Tensor::FromInts(std::move(shape), std::move(v), DType::kInt32);
    }
    case onnx_ir::TensorProto::BOOL:
    case onnx_ir::TensorProto::UINT8:
    case onnx_ir::TensorProto::INT8: {
      std::vector<int64_t> v;
      if (has_raw) {
        if (proto.data_type() == onnx_ir::TensorProto::INT8) {
          auto d = DecodeRaw<int8_t>(raw, count, proto.name());
          v.assign(d.begin(), d.end());
        } else {
          auto d = DecodeRaw<uint8_t>(raw, count, proto.name());
          v.assign(d.begin(), d.end());
        }
      } else {
        v.assign(proto.int32_data().begin(), proto.int32_data().end());
      }
      const DType dt = proto.data_type() == onnx_ir::TensorProto::BOOL
                           ? DType::kBool
                           : DType::kInt32;
      if (dt == DType::kBool) {
        for (int64_t& x : v) x = x != 0;
      }
      return Tensor::FromInts(std::move(shape), std::move(v), dt);
    }
    default:
      throw Error(ErrorCode::kUnsupportedVersion,
                  "unsupported tensor element type " +
                      std::to_string(proto.data_type()) + " for " +
                      proto.name());
  }
}

namespace {

Attribute AttributeFromProto(const onnx_ir::AttributeProto& proto,
                             const std::filesystem::path& base_dir) {
  using AP = onnx_ir::AttributeProto;
  Attribute a;
  AP::AttributeType type = proto.type();
  if (!proto.has_type()) {
    // Pre-IR-4 producers may omit the type field.
    if (proto.has_f()) type = AP::FLOAT;
    else if (proto.has_i()) type = AP::INT;
    else if (proto.has_s()) type = AP::STRING;
    else if (proto.has_t()) type = AP::TENSOR;
    else if (proto.floats_size()) type = AP::FLOATS;
    else if (proto.ints_size()) type = AP::INTS;
    else if (proto.strings_size()) type = AP::STRINGS;
  }
  switch (type) {
    case AP::FLOAT:
      a.kind = Attribute::Kind::kFloat;
      a.f = proto.f();
      break;
    case AP::INT:
      a.kind = Attribute::Kind::kInt;
      a.i = proto.i();
      break;
    case AP::STRING:
      a.kind = Attribute::Kind::kString;
      a.s = proto.s();
      break;
    case AP::TENSOR:
      a.kind = Attribute::Kind::kTensor;
      a.tensor = std::make_shared<const Tensor>(
          TensorFromProto(proto.t(), base_dir));
      break;
    case AP::FLOATS:
      a.kind = Attribute::Kind::kFloats;
      a.floats.assign(proto.floats().begin(), proto.floats().end());
      break;
    case AP::INTS:
      a.kind = Attribute::Kind::kInts;
      a.ints.assign(proto.ints().begin(), proto.ints().end());
      break;
    case AP::STRINGS:
      a.kind = Attribute::Kind::kStrings;
      a.strings.assign(proto.strings().begin(), proto.strings().end());
      break;
    default:
      throw Error(ErrorCode::kUnsupportedVersion,
                  "unsupported attribute type for " + proto.name());
  }
  return a;
}

}  // namespace

struct Model::Impl {
  struct Node {
    std::string name;
    std::string op_type;
    Kernel kernel = nullptr;
    Attributes attrs;
    std::vector<int> inputs;  // -1 for omitted optional inputs
    std::vector<int> outputs;
    bool identity = false;
    std::vector<int> release_after;  // slots whose last use is this node
  };

  int64_t ir_version = 0;
  int64_t opset = 0;
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;
  std::unordered_map<std::string, int> input_slots;
  std::vector<int> output_slots;
  std::vector<std::shared_ptr<const Tensor>> constants;  // per slot
  std::vector<Node> nodes;
  int num_slots = 0;
};

Model Model::LoadFile(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kMissingFile, "model file not found: " + path.string());
  }
  return LoadBytes(ReadFileBytes(path), path.parent_path());
}

Model Model::LoadBytes(std::string_view bytes,
                       const std::filesystem::path& base_dir) {
  onnx_ir::ModelProto proto;
  google::protobuf::io::CodedInputStream stream(
      reinterpret_cast<const uint8_t*>(bytes.data()),
      static_cast<int>(bytes.size()));
  stream.SetTotalBytesLimit(INT_MAX);
  if (!proto.ParseFromCodedStream(&stream) || !proto.has_graph()) {
    throw Error(ErrorCode::kParse, "not a valid ONNX model");
  }

  auto impl = std::make_shared<Impl>();
  impl->ir_version = proto.ir_version();
  if (impl->ir_version < kMinIrVersion || impl->ir_version > kMaxIrVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "unsupported ONNX IR version " +
                    std::to_string(impl->ir_version));
  }
  for (const auto& op : proto.opset_import()) {
    if (op.domain().empty() || op.domain() == "ai.onnx") {
      impl->opset = op.version();
    }
  }
  if (impl->opset < kMinOpset || impl->opset > kMaxOpset) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "unsupported opset version " + std::to_string(impl->opset));
  }

  const onnx_ir::GraphProto& graph = proto.graph();
  std::unordered_map<std::string, int> slots;
  auto slot_of = [&](const std::string& name) {
    auto [it, inserted] = slots.emplace(name, impl->num_slots);
    if (inserted) {
      ++impl->num_slots;
      impl->constants.emplace_back();
    }
    return it->second;
  };

  for (const auto& init : graph.initializer()) {
    const int slot = slot_of(init.name());
    impl->constants[slot] =
        std::make_shared<const Tensor>(TensorFromProto(init, base_dir));
  }
  for (const auto& in : graph.input()) {
    const int slot = slot_of(in.name());
    if (impl->constants[slot]) continue;  // initializer listed as input
    impl->input_names.push_back(in.name());
    impl->input_slots.emplace(in.name(), slot);
  }

  for (const auto& node_proto : graph.node()) {
    if (!node_proto.domain().empty() && node_proto.domain() != "ai.onnx") {
      throw Error(ErrorCode::kUnsupportedVersion,
                  "unsupported operator domain " + node_proto.domain() +
                      " (" + node_proto.op_type() + ")");
    }
    Impl::Node node;
    node.name = node_proto.name();
    node.op_type = node_proto.op_type();
    for (const auto& attr : node_proto.attribute()) {
      node.attrs.Set(attr.name(), AttributeFromProto(attr, base_dir));
    }
    for (const std::string& in : node_proto.input()) {
      if (in.empty()) {
        node.inputs.push_back(-1);
        continue;
      }
      auto it = slots.find(in);
      if (it == slots.end()) {
        throw Error(ErrorCode::kParse, "node " + node.name +
                                           " reads undefined value " + in +
                                           " (graph not topologically sorted)");
      }
      node.inputs.push_back(it->second);
    }
    for (const std::string& out : node_proto.output()) {
      node.outputs.push_back(out.empty() ? -1 : slot_of(out));
    }

    if (node.op_type == "Constant") {
      const Attributes& a = node.attrs;
      Tensor value;
      if (const Tensor* t = a.GetTensor("value")) {
        value = *t;
      } else if (a.Has("value_float")) {
        value = Tensor::ScalarFloat(a.GetFloat("value_float", 0.0f));
      } else if (a.Has("value_int")) {
        value = Tensor::ScalarInt(a.GetInt("value_int", 0));
      } else if (const auto* f = a.GetFloats("value_floats")) {
        value = Tensor::FromFloats({static_cast<int64_t>(f->size())}, *f);
      } else if (const auto* v = a.GetInts("value_ints")) {
        value = Tensor::FromInts({static_cast<int64_t>(v->size())}, *v);
      } else {
        throw Error(ErrorCode::kUnsupportedVersion,
                    "unsupported Constant form in node " + node.name);
      }
      impl->constants[node.outputs.at(0)] =
          std::make_shared<const Tensor>(std::move(value));
      continue;
    }
    node.identity = node.op_type == "Identity";
    if (!node.identity) {
      node.kernel = FindKernel(node.op_type);
      if (node.kernel == nullptr) {
        throw Error(ErrorCode::kUnsupportedVersion,
                    "unsupported operator " + node.op_type);
      }
    }
    impl->nodes.push_back(std::move(node));
  }

  for (const auto& out : graph.output()) {
    auto it = slots.find(out.name());
    if (it == slots.end()) {
      throw Error(ErrorCode::kParse, "graph output " + out.name() +
                                         " is never produced");
    }
    impl->output_names.push_back(out.name());
    impl->output_slots.push_back(it->second);
  }

  // Free intermediate values after their last consumer.
  std::vector<int> last_use(impl->num_slots, -1);
  for (std::size_t n = 0; n < impl->nodes.size(); ++n) {
    for (int s : impl->nodes[n].inputs) {
      if (s >= 0) last_use[s] = static_cast<int>(n);
    }
  }
  for (int s : impl->output_slots) last_use[s] = -1;
  for (int s = 0; s < impl->num_slots; ++s) {
    if (last_use[s] >= 0 && !impl->constants[s]) {
      impl->nodes[last_use[s]].release_after.push_back(s);
    }
  }
  return Model(std::move(impl));
}

const std::vector<std::string>& Model::input_names() const {
  return impl_->input_names;
}

const std::vector<std::string>& Model::output_names() const {
  return impl_->output_names;
}

bool Model::HasInput(std::string_view name) const {
  return impl_->input_slots.count(std::string(name)) > 0;
}

int64_t Model::ir_version() const { return impl_->ir_version; }

int64_t Model::opset_version() const { return impl_->opset; }

std::vector<Tensor> Model::Run(
    const std::vector<std::pair<std::string, Tensor>>& feeds) const {
  const Impl& g = *impl_;
  std::vector<std::shared_ptr<const Tensor>> values = g.constants;
  for (const auto& [name, tensor] : feeds) {
    auto it = g.input_slots.find(name);
    if (it == g.input_slots.end()) continue;
    values[it->second] = std::make_shared<const Tensor>(tensor);
  }
  for (const auto& [name, slot] : g.input_slots) {
    if (!values[slot]) {
      throw Error(ErrorCode::kInference, "missing graph input " + name);
    }
  }

  std::vector<const Tensor*> inputs;
  for (const Impl::Node& node : g.nodes) {
    inputs.clear();
    for (int s : node.inputs) {
      if (s < 0) {
        inputs.push_back(nullptr);
        continue;
      }
      if (!values[s]) {
        throw Error(ErrorCode::kInference,
                    "value consumed before production in node " + node.name);
      }
      inputs.push_back(values[s].get());
    }
    if (node.identity) {
      values[node.outputs.at(0)] = values[node.inputs.at(0)];
    } else {
      OpContext ctx{node.name, inputs, node.attrs, g.opset,
                    node.outputs.size()};
      std::vector<Tensor> results;
      try {
        results = node.kernel(ctx);
      } catch (const Error& e) {
        throw Error(e.code(), node.op_type + " node '" + node.name +
                                  "': " + e.what());
      }
      for (std::size_t k = 0; k < node.outputs.size() && k < results.size();
           ++k) {
        if (node.outputs[k] >= 0) {
          values[node.outputs[k]] =
              std::make_shared<const Tensor>(std::move(results[k]));
        }
      }
    }
    for (int s : node.release_after) values[s].reset();
  }

  std::vector<Tensor> outputs;
  outputs.reserve(g.output_slots.size());
  for (std::size_t k = 0; k < g.output_slots.size(); ++k) {
    const auto& v = values[g.output_slots[k]];
    if (!v) {
      throw Error(ErrorCode::kInference,
                  "graph output not computed: " + g.output_names[k]);
    }
    outputs.push_back(*v);
  }
  return outputs;
}

}  // namespace gruen::onnx
