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

#include "ops.h"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "gruen/error.h"

namespace gruen::onnx {

int64_t Attributes::GetInt(std::string_view name, int64_t fallback) const {
  const Attribute* a = Find(name);
  return a ? a->i : fallback;
}

float Attributes::GetFloat(std::string_view name, float fallback) const {
  const Attribute* a = Find(name);
  return a ? a->f : fallback;
}

std::string Attributes::GetString(std::string_view name,
                                  const std::string& fallback) const {
  const Attribute* a = Find(name);
  return a ? a->s : fallback;
}

const std::vector<int64_t>* Attributes::GetInts(std::string_view name) const {
  const Attribute* a = Find(name);
  return a && a->kind == Attribute::Kind::kInts ? &a->ints : nullptr;
}

const std::vector<float>* Attributes::GetFloats(std::string_view name) const {
  const Attribute* a = Find(name);
  return a && a->kind == Attribute::Kind::kFloats ? &a->floats : nullptr;
}

const Tensor* Attributes::GetTensor(std::string_view name) const {
  const Attribute* a = Find(name);
  return a && a->kind == Attribute::Kind::kTensor ? a->tensor.get() : nullptr;
}

const Attribute* Attributes::Find(std::string_view name) const {
  auto it = values_.find(name);
  return it == values_.end() ? nullptr : &it->second;
}

const Tensor& OpContext::Required(std::size_t i) const {
  const Tensor* t = Input(i);
  if (t == nullptr) {
    throw Error(ErrorCode::kInference,
                "missing required input " + std::to_string(i));
  }
  return *t;
}

namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kInference, message);
}

int64_t NormalizeAxis(int64_t axis, int64_t rank) {
  if (axis < -rank || axis >= std::max<int64_t>(rank, 1)) {
    Fail("axis " + std::to_string(axis) + " out of range for rank " +
         std::to_string(rank));
  }
  return axis < 0 ? axis + rank : axis;
}

std::vector<int64_t> ToIntVector(const Tensor& t) {
  std::vector<int64_t> v(t.size());
  for (int64_t i = 0; i < t.size(); ++i) v[i] = t.AsInt(i);
  return v;
}

Tensor ToFloat(const Tensor& t) {
  if (t.floating()) return t;
  Tensor out(DType::kFloat, t.shape());
  auto dst = out.mutable_floats();
  auto src = t.ints();
  for (int64_t i = 0; i < t.size(); ++i) dst[i] = static_cast<float>(src[i]);
  return out;
}

Shape BroadcastShapes(const Shape& a, const Shape& b) {
  const std::size_t rank = std::max(a.size(), b.size());
  Shape out(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    const int64_t da = i < rank - a.size() ? 1 : a[i - (rank - a.size())];
    const int64_t db = i < rank - b.size() ? 1 : b[i - (rank - b.size())];
    if (da != db && da != 1 && db != 1) {
      Fail("cannot broadcast " + ShapeString(a) + " with " + ShapeString(b));
    }
    out[i] = da == 1 ? db : da;
  }
  return out;
}

// Strides of `in` viewed under the broadcast shape `out` (0 on broadcast
// dimensions).
std::vector<int64_t> BroadcastStrides(const Shape& in, const Shape& out) {
  std::vector<int64_t> strides(out.size(), 0);
  int64_t stride = 1;
  for (std::size_t k = 0; k < in.size(); ++k) {
    const std::size_t i = in.size() - 1 - k;
    const std::size_t o = out.size() - 1 - k;
    strides[o] = in[i] == 1 ? 0 : stride;
    stride *= in[i];
  }
  return strides;
}

// Visits every element of `out` in row-major order, passing the flat output
// index and the matching flat offset into each broadcast input.
template <std::size_t N, typename Fn>
void ForEachBroadcast(const Shape& out, const std::array<const Shape*, N>& ins,
                      Fn&& fn) {
  const int64_t total = NumElements(out);
  if (total == 0) return;
  const std::size_t rank = out.size();
  std::array<std::vector<int64_t>, N> strides;
  for (std::size_t k = 0; k < N; ++k) strides[k] = BroadcastStrides(*ins[k], out);
  if (rank == 0) {
    std::array<int64_t, N> offs{};
    fn(int64_t{0}, offs);
    return;
  }
  const int64_t inner = out[rank - 1];
  std::array<int64_t, N> inner_stride;
  for (std::size_t k = 0; k < N; ++k) inner_stride[k] = strides[k][rank - 1];
  std::vector<int64_t> counter(rank, 0);
  std::array<int64_t, N> base{};
  int64_t o = 0;
  while (o < total) {
    std::array<int64_t, N> offs = base;
    for (int64_t j = 0; j < inner; ++j) {
      fn(o++, offs);
      for (std::size_t k = 0; k < N; ++k) offs[k] += inner_stride[k];
    }
    // Advance the outer counter.
    for (int64_t d = static_cast<int64_t>(rank) - 2; d >= 0; --d) {
      ++counter[d];
      for (std::size_t k = 0; k < N; ++k) base[k] += strides[k][d];
      if (counter[d] < out[d]) break;
      for (std::size_t k = 0; k < N; ++k) base[k] -= strides[k][d] * out[d];
      counter[d] = 0;
    }
  }
}

// ---------------------------------------------------------------------------
// Elementwise

enum class BinOp { kAdd, kSub, kMul, kDiv, kPow, kMin, kMax, kMod };

template <typename T>
T ApplyBin(BinOp op, T a, T b) {
  switch (op) {
    case BinOp::kAdd:
      return a + b;
    case BinOp::kSub:
      return a - b;
    case BinOp::kMul:
      return a * b;
    case BinOp::kDiv:
      if constexpr (std::is_integral_v<T>) {
        if (b == 0) Fail("integer division by zero");
      }
      return a / b;
    case BinOp::kPow:
      if constexpr (std::is_integral_v<T>) {
        return static_cast<T>(std::llround(
            std::pow(static_cast<double>(a), static_cast<double>(b))));
      } else {
        if (b == 2.0f) return a * a;
        return std::pow(a, b);
      }
    case BinOp::kMin:
      return std::min(a, b);
    case BinOp::kMax:
      return std::max(a, b);
    case BinOp::kMod:
      if constexpr (std::is_integral_v<T>) {
        if (b == 0) Fail("integer modulo by zero");
        T r = a % b;
        if (r != 0 && ((r < 0) != (b < 0))) r += b;
        return r;
      } else {
        return std::fmod(a, b);
      }
  }
  return a;
}

Tensor Binary(const Tensor& a_in, const Tensor& b_in, BinOp op) {
  const Shape out_shape = BroadcastShapes(a_in.shape(), b_in.shape());
  const bool floating = a_in.floating() || b_in.floating();
  if (floating) {
    const Tensor a = ToFloat(a_in);
    const Tensor b = ToFloat(b_in);
    Tensor out(a_in.floating() ? a_in.dtype() : DType::kFloat, out_shape);
    auto pa = a.floats();
    auto pb = b.floats();
    auto po = out.mutable_floats();
    if (a.shape() == b.shape()) {
      for (int64_t i = 0; i < out.size(); ++i) po[i] = ApplyBin(op, pa[i], pb[i]);
      return out;
    }
    ForEachBroadcast<2>(out_shape, {&a.shape(), &b.shape()},
                        [&](int64_t o, const std::array<int64_t, 2>& x) {
                          po[o] = ApplyBin(op, pa[x[0]], pb[x[1]]);
                        });
    return out;
  }
  Tensor out(a_in.dtype(), out_shape);
  auto pa = a_in.ints();
  auto pb = b_in.ints();
  auto po = out.mutable_ints();
  ForEachBroadcast<2>(out_shape, {&a_in.shape(), &b_in.shape()},
                      [&](int64_t o, const std::array<int64_t, 2>& x) {
                        po[o] = ApplyBin(op, pa[x[0]], pb[x[1]]);
                      });
  return out;
}

template <BinOp Op>
std::vector<Tensor> BinaryKernel(const OpContext& ctx) {
  Tensor acc = Binary(ctx.Required(0), ctx.Required(1), Op);
  for (std::size_t i = 2; i < ctx.inputs.size(); ++i) {
    acc = Binary(acc, ctx.Required(i), Op);
  }
  std::vector<Tensor> out;
  out.push_back(std::move(acc));
  return out;
}

std::vector<Tensor> SumKernel(const OpContext& ctx) {
  Tensor acc = ctx.Required(0);
  for (std::size_t i = 1; i < ctx.inputs.size(); ++i) {
    acc = Binary(acc, ctx.Required(i), BinOp::kAdd);
  }
  std::vector<Tensor> out;
  out.push_back(std::move(acc));
  return out;
}

enum class CmpOp { kEq, kLt, kGt, kLe, kGe, kAnd, kOr, kXor };

template <CmpOp Op>
std::vector<Tensor> CompareKernel(const OpContext& ctx) {
  const Tensor& a = ctx.Required(0);
  const Tensor& b = ctx.Required(1);
  const Shape out_shape = BroadcastShapes(a.shape(), b.shape());
  Tensor out(DType::kBool, out_shape);
  auto po = out.mutable_ints();
  ForEachBroadcast<2>(out_shape, {&a.shape(), &b.shape()},
                      [&](int64_t o, const std::array<int64_t, 2>& x) {
                        bool r = false;
                        if (Op == CmpOp::kAnd || Op == CmpOp::kOr ||
                            Op == CmpOp::kXor) {
                          const bool va = a.AsInt(x[0]) != 0;
                          const bool vb = b.AsInt(x[1]) != 0;
                          if (Op == CmpOp::kAnd) r = va && vb;
                          if (Op == CmpOp::kOr) r = va || vb;
                          if (Op == CmpOp::kXor) r = va != vb;
                        } else if (a.floating() || b.floating()) {
                          const double va = a.AsDouble(x[0]);
                          const double vb = b.AsDouble(x[1]);
                          if (Op == CmpOp::kEq) r = va == vb;
                          if (Op == CmpOp::kLt) r = va < vb;
                          if (Op == CmpOp::kGt) r = va > vb;
                          if (Op == CmpOp::kLe) r = va <= vb;
                          if (Op == CmpOp::kGe) r = va >= vb;
                        } else {
                          const int64_t va = a.ints()[x[0]];
                          const int64_t vb = b.ints()[x[1]];
                          if (Op == CmpOp::kEq) r = va == vb;
                          if (Op == CmpOp::kLt) r = va < vb;
                          if (Op == CmpOp::kGt) r = va > vb;
                          if (Op == CmpOp::kLe) r = va <= vb;
                          if (Op == CmpOp::kGe) r = va >= vb;
                        }
                        po[o] = r;
                      });
  std::vector<Tensor> res;
  res.push_back(std::move(out));
  return res;
}

enum class UnOp {
  kErf, kTanh, kSqrt, kExp, kLog, kNeg, kAbs, kRelu, kSigmoid, kReciprocal,
  kFloor, kCeil, kNot, kIsNaN, kIsInf
};

float ApplyUnary(UnOp op, float x) {
  switch (op) {
    case UnOp::kErf:
      return std::erf(x);
    case UnOp::kTanh:
      return std::tanh(x);
    case UnOp::kSqrt:
      return std::sqrt(x);
    case UnOp::kExp:
      return std::exp(x);
    case UnOp::kLog:
      return std::log(x);
    case UnOp::kNeg:
      return -x;
    case UnOp::kAbs:
      return std::fabs(x);
    case UnOp::kRelu:
      return x > 0.0f ? x : 0.0f;
    case UnOp::kSigmoid:
      return 1.0f / (1.0f + std::exp(-x));
    case UnOp::kReciprocal:
      return 1.0f / x;
    case UnOp::kFloor:
      return std::floor(x);
    case UnOp::kCeil:
      return std::ceil(x);
    default:
      return x;
  }
}

template <UnOp Op>
std::vector<Tensor> UnaryKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  std::vector<Tensor> res;
  if (Op == UnOp::kNot) {
    Tensor out(DType::kBool, x.shape());
    for (int64_t i = 0; i < x.size(); ++i) out.mutable_ints()[i] = x.AsInt(i) == 0;
    res.push_back(std::move(out));
    return res;
  }
  if (Op == UnOp::kIsNaN || Op == UnOp::kIsInf) {
    Tensor out(DType::kBool, x.shape());
    for (int64_t i = 0; i < x.size(); ++i) {
      const double v = x.AsDouble(i);
      out.mutable_ints()[i] = Op == UnOp::kIsNaN ? std::isnan(v) : std::isinf(v);
    }
    res.push_back(std::move(out));
    return res;
  }
  if (!x.floating() && (Op == UnOp::kNeg || Op == UnOp::kAbs ||
                        Op == UnOp::kRelu)) {
    Tensor out = x;
    for (int64_t& v : out.mutable_ints()) {
      if (Op == UnOp::kNeg) v = -v;
      if (Op == UnOp::kAbs) v = v < 0 ? -v : v;
      if (Op == UnOp::kRelu) v = v > 0 ? v : 0;
    }
    res.push_back(std::move(out));
    return res;
  }
  Tensor out = ToFloat(x);
  for (float& v : out.mutable_floats()) v = ApplyUnary(Op, v);
  res.push_back(std::move(out));
  return res;
}

std::vector<Tensor> One(Tensor t) {
  std::vector<Tensor> res;
  res.push_back(std::move(t));
  return res;
}

std::vector<Tensor> GeluKernel(const OpContext& ctx) {
  Tensor out = ToFloat(ctx.Required(0));
  const bool tanh_approx = ctx.attrs.GetString("approximate", "none") == "tanh";
  for (float& v : out.mutable_floats()) {
    if (tanh_approx) {
      const float k = 0.7978845608028654f;  // sqrt(2/pi)
      v = 0.5f * v * (1.0f + std::tanh(k * (v + 0.044715f * v * v * v)));
    } else {
      v = 0.5f * v * (1.0f + std::erf(v * 0.7071067811865476f));
    }
  }
  return One(std::move(out));
}

std::vector<Tensor> ClipKernel(const OpContext& ctx) {
  Tensor out = ctx.Required(0);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  if (ctx.opset < 11) {
    lo = ctx.attrs.GetFloat("min", -std::numeric_limits<float>::max());
    hi = ctx.attrs.GetFloat("max", std::numeric_limits<float>::max());
  } else {
    if (const Tensor* t = ctx.Input(1)) lo = t->AsDouble(0);
    if (const Tensor* t = ctx.Input(2)) hi = t->AsDouble(0);
  }
  if (out.floating()) {
    for (float& v : out.mutable_floats()) {
      v = static_cast<float>(std::clamp<double>(v, lo, hi));
    }
  } else {
    for (int64_t& v : out.mutable_ints()) {
      v = static_cast<int64_t>(std::clamp<double>(static_cast<double>(v), lo, hi));
    }
  }
  return One(std::move(out));
}

std::vector<Tensor> WhereKernel(const OpContext& ctx) {
  const Tensor& cond = ctx.Required(0);
  const Tensor& x = ctx.Required(1);
  const Tensor& y = ctx.Required(2);
  const Shape out_shape =
      BroadcastShapes(cond.shape(), BroadcastShapes(x.shape(), y.shape()));
  if (x.floating() != y.floating()) Fail("Where branches differ in type");
  Tensor out(x.dtype(), out_shape);
  if (x.floating()) {
    auto po = out.mutable_floats();
    ForEachBroadcast<3>(out_shape, {&cond.shape(), &x.shape(), &y.shape()},
                        [&](int64_t o, const std::array<int64_t, 3>& k) {
                          po[o] = cond.ints()[k[0]] ? x.floats()[k[1]]
                                                    : y.floats()[k[2]];
                        });
  } else {
    auto po = out.mutable_ints();
    ForEachBroadcast<3>(out_shape, {&cond.shape(), &x.shape(), &y.shape()},
                        [&](int64_t o, const std::array<int64_t, 3>& k) {
                          po[o] = cond.ints()[k[0]] ? x.ints()[k[1]]
                                                    : y.ints()[k[2]];
                        });
  }
  return One(std::move(out));
}

DType DTypeFromOnnx(int64_t code) {
  switch (code) {
    case 1:
      return DType::kFloat;
    case 11:
      return DType::kDouble;
    case 7:
      return DType::kInt64;
    case 9:
      return DType::kBool;
    case 2:
    case 3:
    case 4:
    case 5:
    case 6:
    case 12:
      return DType::kInt32;
    default:
      Fail("unsupported cast target type " + std::to_string(code));
  }
}

Tensor CastTo(const Tensor& x, DType to) {
  Tensor out(to, x.shape());
  if (IsFloating(to)) {
    for (int64_t i = 0; i < x.size(); ++i) {
      out.mutable_floats()[i] = static_cast<float>(x.AsDouble(i));
    }
  } else if (to == DType::kBool) {
    for (int64_t i = 0; i < x.size(); ++i) {
      out.mutable_ints()[i] = x.AsDouble(i) != 0.0;
    }
  } else if (x.floating()) {
    for (int64_t i = 0; i < x.size(); ++i) {
      const float v = x.floats()[i];
      out.mutable_ints()[i] = std::isfinite(v) ? static_cast<int64_t>(v) : 0;
    }
  } else {
    std::copy(x.ints().begin(), x.ints().end(), out.mutable_ints().begin());
    if (to == DType::kInt32) {
      for (int64_t& v : out.mutable_ints()) v = static_cast<int32_t>(v);
    }
  }
  return out;
}

std::vector<Tensor> CastKernel(const OpContext& ctx) {
  return One(CastTo(ctx.Required(0), DTypeFromOnnx(ctx.attrs.GetInt("to", 1))));
}

// ---------------------------------------------------------------------------
// Shape manipulation

std::vector<Tensor> ShapeKernel(const OpContext& ctx) {
  const Shape& s = ctx.Required(0).shape();
  const int64_t rank = static_cast<int64_t>(s.size());
  int64_t start = ctx.attrs.GetInt("start", 0);
  int64_t end = ctx.attrs.GetInt("end", rank);
  if (start < 0) start += rank;
  if (end < 0) end += rank;
  start = std::clamp<int64_t>(start, 0, rank);
  end = std::clamp<int64_t>(end, start, rank);
  std::vector<int64_t> dims(s.begin() + start, s.begin() + end);
  const int64_t n = static_cast<int64_t>(dims.size());
  return One(Tensor::FromInts({n}, std::move(dims)));
}

std::vector<Tensor> SizeKernel(const OpContext& ctx) {
  return One(Tensor::ScalarInt(ctx.Required(0).size()));
}

std::vector<Tensor> ReshapeKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  std::vector<int64_t> target =
      ctx.opset < 5 ? *ctx.attrs.GetInts("shape") : ToIntVector(ctx.Required(1));
  const bool allow_zero = ctx.attrs.GetInt("allowzero", 0) != 0;
  int64_t infer = -1;
  int64_t known = 1;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target[i] == 0 && !allow_zero) {
      if (i >= x.shape().size()) Fail("Reshape copies a missing dimension");
      target[i] = x.shape()[i];
    }
    if (target[i] == -1) {
      if (infer >= 0) Fail("Reshape with more than one -1");
      infer = static_cast<int64_t>(i);
    } else {
      known *= target[i];
    }
  }
  if (infer >= 0) {
    if (known == 0 || x.size() % known != 0) Fail("Reshape cannot infer dimension");
    target[infer] = x.size() / known;
  }
  return One(x.Reshaped(target));
}

std::vector<Tensor> FlattenKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  const int64_t rank = x.rank();
  int64_t axis = ctx.attrs.GetInt("axis", 1);
  if (axis < 0) axis += rank;
  if (axis < 0 || axis > rank) Fail("Flatten axis out of range");
  int64_t outer = 1;
  for (int64_t i = 0; i < axis; ++i) outer *= x.shape()[i];
  return One(x.Reshaped({outer, outer == 0 ? 0 : x.size() / std::max<int64_t>(outer, 1)}));
}

std::vector<int64_t> AxesArgument(const OpContext& ctx, int64_t input_opset,
                                  std::size_t input_index) {
  if (ctx.opset >= input_opset) {
    if (const Tensor* t = ctx.Input(input_index)) return ToIntVector(*t);
    return {};
  }
  if (const auto* a = ctx.attrs.GetInts("axes")) return *a;
  return {};
}

std::vector<Tensor> UnsqueezeKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  std::vector<int64_t> axes = AxesArgument(ctx, 13, 1);
  const int64_t out_rank = x.rank() + static_cast<int64_t>(axes.size());
  for (int64_t& a : axes) a = NormalizeAxis(a, out_rank);
  std::sort(axes.begin(), axes.end());
  Shape out;
  std::size_t src = 0;
  std::size_t next_axis = 0;
  for (int64_t d = 0; d < out_rank; ++d) {
    if (next_axis < axes.size() && axes[next_axis] == d) {
      out.push_back(1);
      ++next_axis;
    } else {
      out.push_back(x.shape().at(src++));
    }
  }
  return One(x.Reshaped(out));
}

std::vector<Tensor> SqueezeKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  std::vector<int64_t> axes = AxesArgument(ctx, 13, 1);
  for (int64_t& a : axes) a = NormalizeAxis(a, x.rank());
  Shape out;
  for (int64_t d = 0; d < x.rank(); ++d) {
    const bool listed = std::find(axes.begin(), axes.end(), d) != axes.end();
    if (axes.empty() ? x.shape()[d] == 1 : listed) {
      if (x.shape()[d] != 1) Fail("Squeeze of a non-unit dimension");
      continue;
    }
    out.push_back(x.shape()[d]);
  }
  return One(x.Reshaped(out));
}

template <typename T>
void CopyBlocks(std::span<const T> src, std::span<T> dst, int64_t outer,
                int64_t chunk, int64_t dst_stride, int64_t dst_offset) {
  for (int64_t o = 0; o < outer; ++o) {
    std::copy_n(src.begin() + o * chunk, chunk,
                dst.begin() + o * dst_stride + dst_offset);
  }
}

std::vector<Tensor> ConcatKernel(const OpContext& ctx) {
  const Tensor& first = ctx.Required(0);
  const int64_t rank = first.rank();
  const int64_t axis = NormalizeAxis(ctx.attrs.GetInt("axis", 0), rank);
  Shape out_shape = first.shape();
  out_shape[axis] = 0;
  bool floating = false;
  for (const Tensor* t : ctx.inputs) {
    if (t == nullptr) continue;
    if (t->rank() != rank) Fail("Concat rank mismatch");
    out_shape[axis] += t->shape()[axis];
    floating = floating || t->floating();
  }
  int64_t outer = 1;
  for (int64_t i = 0; i < axis; ++i) outer *= out_shape[i];
  int64_t inner = 1;
  for (int64_t i = axis + 1; i < rank; ++i) inner *= out_shape[i];
  Tensor out(floating ? first.dtype() : first.dtype(), out_shape);
  const int64_t dst_stride = out_shape[axis] * inner;
  int64_t offset = 0;
  for (const Tensor* t : ctx.inputs) {
    if (t == nullptr) continue;
    const int64_t chunk = t->shape()[axis] * inner;
    if (out.floating()) {
      const Tensor f = ToFloat(*t);
      CopyBlocks<float>(f.floats(), out.mutable_floats(), outer, chunk,
                        dst_stride, offset);
    } else {
      CopyBlocks<int64_t>(t->ints(), out.mutable_ints(), outer, chunk,
                          dst_stride, offset);
    }
    offset += chunk;
  }
  return One(std::move(out));
}

std::vector<Tensor> SplitKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  const int64_t axis = NormalizeAxis(ctx.attrs.GetInt("axis", 0), x.rank());
  const int64_t dim = x.shape()[axis];
  std::vector<int64_t> sizes;
  if (ctx.opset >= 13) {
    if (const Tensor* s = ctx.Input(1)) sizes = ToIntVector(*s);
  } else if (const auto* s = ctx.attrs.GetInts("split")) {
    sizes = *s;
  }
  if (sizes.empty()) {
    const int64_t parts = static_cast<int64_t>(ctx.num_outputs);
    const int64_t each = (dim + parts - 1) / parts;
    for (int64_t p = 0, left = dim; p < parts; ++p) {
      sizes.push_back(std::min(each, left));
      left -= sizes.back();
    }
  }
  int64_t outer = 1;
  for (int64_t i = 0; i < axis; ++i) outer *= x.shape()[i];
  int64_t inner = 1;
  for (int64_t i = axis + 1; i < x.rank(); ++i) inner *= x.shape()[i];
  std::vector<Tensor> outs;
  int64_t start = 0;
  for (int64_t size : sizes) {
    Shape s = x.shape();
    s[axis] = size;
    Tensor out(x.dtype(), s);
    for (int64_t o = 0; o < outer; ++o) {
      const int64_t src = (o * dim + start) * inner;
      const int64_t dst = o * size * inner;
      if (x.floating()) {
        std::copy_n(x.floats().begin() + src, size * inner,
                    out.mutable_floats().begin() + dst);
      } else {
        std::copy_n(x.ints().begin() + src, size * inner,
                    out.mutable_ints().begin() + dst);
      }
    }
    start += size;
    outs.push_back(std::move(out));
  }
  return outs;
}

std::vector<Tensor> TransposeKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  const int64_t rank = x.rank();
  std::vector<int64_t> perm(rank);
  if (const auto* p = ctx.attrs.GetInts("perm")) {
    perm = *p;
  } else {
    for (int64_t i = 0; i < rank; ++i) perm[i] = rank - 1 - i;
  }
  Shape out_shape(rank);
  std::vector<int64_t> in_strides(rank, 1);
  for (int64_t i = rank - 2; i >= 0; --i) {
    in_strides[i] = in_strides[i + 1] * x.shape()[i + 1];
  }
  Shape permuted_strides(rank);
  for (int64_t i = 0; i < rank; ++i) {
    out_shape[i] = x.shape()[perm[i]];
    permuted_strides[i] = in_strides[perm[i]];
  }
  Tensor out(x.dtype(), out_shape);
  if (out.size() == 0) return One(std::move(out));
  std::vector<int64_t> counter(rank, 0);
  int64_t src = 0;
  for (int64_t o = 0; o < out.size(); ++o) {
    if (x.floating()) {
      out.mutable_floats()[o] = x.floats()[src];
    } else {
      out.mutable_ints()[o] = x.ints()[src];
    }
    for (int64_t d = rank - 1; d >= 0; --d) {
      ++counter[d];
      src += permuted_strides[d];
      if (counter[d] < out_shape[d]) break;
      src -= permuted_strides[d] * out_shape[d];
      counter[d] = 0;
    }
  }
  return One(std::move(out));
}

std::vector<Tensor> GatherKernel(const OpContext& ctx) {
  const Tensor& data = ctx.Required(0);
  const Tensor& indices = ctx.Required(1);
  const int64_t rank = data.rank();
  const int64_t axis = NormalizeAxis(ctx.attrs.GetInt("axis", 0), rank);
  const int64_t dim = data.shape()[axis];
  int64_t outer = 1;
  for (int64_t i = 0; i < axis; ++i) outer *= data.shape()[i];
  int64_t inner = 1;
  for (int64_t i = axis + 1; i < rank; ++i) inner *= data.shape()[i];
  Shape out_shape(data.shape().begin(), data.shape().begin() + axis);
  out_shape.insert(out_shape.end(), indices.shape().begin(),
                   indices.shape().end());
  out_shape.insert(out_shape.end(), data.shape().begin() + axis + 1,
                   data.shape().end());
  Tensor out(data.dtype(), out_shape);
  const int64_t n_idx = indices.size();
  for (int64_t o = 0; o < outer; ++o) {
    for (int64_t k = 0; k < n_idx; ++k) {
      int64_t idx = indices.AsInt(k);
      if (idx < 0) idx += dim;
      if (idx < 0 || idx >= dim) {
        Fail("Gather index " + std::to_string(indices.AsInt(k)) +
             " out of range for dimension " + std::to_string(dim));
      }
      const int64_t src = (o * dim + idx) * inner;
      const int64_t dst = (o * n_idx + k) * inner;
      if (data.floating()) {
        std::copy_n(data.floats().begin() + src, inner,
                    out.mutable_floats().begin() + dst);
      } else {
        std::copy_n(data.ints().begin() + src, inner,
                    out.mutable_ints().begin() + dst);
      }
    }
  }
  return One(std::move(out));
}

std::vector<Tensor> SliceKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  const int64_t rank = x.rank();
  std::vector<int64_t> starts, ends, axes, steps;
  if (ctx.opset < 10) {
    starts = *ctx.attrs.GetInts("starts");
    ends = *ctx.attrs.GetInts("ends");
    if (const auto* a = ctx.attrs.GetInts("axes")) axes = *a;
  } else {
    starts = ToIntVector(ctx.Required(1));
    ends = ToIntVector(ctx.Required(2));
    if (const Tensor* a = ctx.Input(3)) axes = ToIntVector(*a);
    if (const Tensor* s = ctx.Input(4)) steps = ToIntVector(*s);
  }
  if (axes.empty()) {
    for (std::size_t i = 0; i < starts.size(); ++i) axes.push_back(i);
  }
  if (steps.empty()) steps.assign(starts.size(), 1);
  std::vector<int64_t> begin(rank, 0), step(rank, 1);
  Shape out_shape = x.shape();
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const int64_t a = NormalizeAxis(axes[k], rank);
    const int64_t dim = x.shape()[a];
    const int64_t st = steps[k];
    if (st == 0) Fail("Slice step of zero");
    int64_t s = starts[k];
    int64_t e = ends[k];
    if (s < 0) s += dim;
    if (e < 0) e += dim;
    int64_t count = 0;
    if (st > 0) {
      s = std::clamp<int64_t>(s, 0, dim);
      e = std::clamp<int64_t>(e, 0, dim);
      count = e > s ? (e - s + st - 1) / st : 0;
    } else {
      s = std::clamp<int64_t>(s, 0, dim - 1);
      e = std::clamp<int64_t>(e, -1, dim - 1);
      count = s > e ? (s - e + (-st) - 1) / (-st) : 0;
    }
    begin[a] = s;
    step[a] = st;
    out_shape[a] = count;
  }
  Tensor out(x.dtype(), out_shape);
  if (out.size() == 0) return One(std::move(out));
  std::vector<int64_t> in_strides(rank, 1);
  for (int64_t i = rank - 2; i >= 0; --i) {
    in_strides[i] = in_strides[i + 1] * x.shape()[i + 1];
  }
  std::vector<int64_t> counter(rank, 0);
  int64_t src = 0;
  for (int64_t d = 0; d < rank; ++d) src += begin[d] * in_strides[d];
  for (int64_t o = 0; o < out.size(); ++o) {
    if (x.floating()) {
      out.mutable_floats()[o] = x.floats()[src];
    } else {
      out.mutable_ints()[o] = x.ints()[src];
    }
    for (int64_t d = rank - 1; d >= 0; --d) {
      ++counter[d];
      src += step[d] * in_strides[d];
      if (counter[d] < out_shape[d]) break;
      src -= step[d] * in_strides[d] * out_shape[d];
      counter[d] = 0;
    }
  }
  return One(std::move(out));
}

Tensor BroadcastTo(const Tensor& x, const Shape& shape) {
  Tensor out(x.dtype(), shape);
  if (x.floating()) {
    auto po = out.mutable_floats();
    ForEachBroadcast<1>(shape, {&x.shape()},
                        [&](int64_t o, const std::array<int64_t, 1>& k) {
                          po[o] = x.floats()[k[0]];
                        });
  } else {
    auto po = out.mutable_ints();
    ForEachBroadcast<1>(shape, {&x.shape()},
                        [&](int64_t o, const std::array<int64_t, 1>& k) {
                          po[o] = x.ints()[k[0]];
                        });
  }
  return out;
}

std::vector<Tensor> ExpandKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  const Shape target = ToIntVector(ctx.Required(1));
  return One(BroadcastTo(x, BroadcastShapes(x.shape(), target)));
}

std::vector<Tensor> TileKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  const std::vector<int64_t> reps = ToIntVector(ctx.Required(1));
  if (static_cast<int64_t>(reps.size()) != x.rank()) Fail("Tile repeats rank");
  Shape out_shape(x.rank());
  for (int64_t d = 0; d < x.rank(); ++d) out_shape[d] = x.shape()[d] * reps[d];
  Tensor out(x.dtype(), out_shape);
  std::vector<int64_t> in_strides(x.rank(), 1);
  for (int64_t i = x.rank() - 2; i >= 0; --i) {
    in_strides[i] = in_strides[i + 1] * x.shape()[i + 1];
  }
  std::vector<int64_t> counter(x.rank(), 0);
  for (int64_t o = 0; o < out.size(); ++o) {
    int64_t src = 0;
    for (int64_t d = 0; d < x.rank(); ++d) {
      src += (counter[d] % x.shape()[d]) * in_strides[d];
    }
    if (x.floating()) {
      out.mutable_floats()[o] = x.floats()[src];
    } else {
      out.mutable_ints()[o] = x.ints()[src];
    }
    for (int64_t d = x.rank() - 1; d >= 0; --d) {
      if (++counter[d] < out_shape[d]) break;
      counter[d] = 0;
    }
  }
  return One(std::move(out));
}

std::vector<Tensor> ConstantOfShapeKernel(const OpContext& ctx) {
  const Shape shape = ToIntVector(ctx.Required(0));
  const Tensor* value = ctx.attrs.GetTensor("value");
  if (value == nullptr) return One(Tensor(DType::kFloat, shape));
  Tensor out(value->dtype(), shape);
  if (out.floating()) {
    std::fill(out.mutable_floats().begin(), out.mutable_floats().end(),
              value->floats()[0]);
  } else {
    std::fill(out.mutable_ints().begin(), out.mutable_ints().end(),
              value->ints()[0]);
  }
  return One(std::move(out));
}

std::vector<Tensor> RangeKernel(const OpContext& ctx) {
  const Tensor& start = ctx.Required(0);
  const Tensor& limit = ctx.Required(1);
  const Tensor& delta = ctx.Required(2);
  if (start.floating()) {
    const double s = start.AsDouble(0);
    const double l = limit.AsDouble(0);
    const double d = delta.AsDouble(0);
    if (d == 0.0) Fail("Range with zero delta");
    const int64_t n =
        std::max<int64_t>(static_cast<int64_t>(std::ceil((l - s) / d)), 0);
    Tensor out(start.dtype(), {n});
    for (int64_t i = 0; i < n; ++i) {
      out.mutable_floats()[i] = static_cast<float>(s + i * d);
    }
    return One(std::move(out));
  }
  const int64_t s = start.AsInt(0);
  const int64_t l = limit.AsInt(0);
  const int64_t d = delta.AsInt(0);
  if (d == 0) Fail("Range with zero delta");
  const int64_t n = std::max<int64_t>(
      static_cast<int64_t>(std::ceil(static_cast<double>(l - s) / d)), 0);
  Tensor out(start.dtype(), {n});
  for (int64_t i = 0; i < n; ++i) out.mutable_ints()[i] = s + i * d;
  return One(std::move(out));
}

std::vector<Tensor> DropoutKernel(const OpContext& ctx) {
  std::vector<Tensor> res;
  res.push_back(ctx.Required(0));
  if (ctx.num_outputs > 1) {
    Tensor mask(DType::kBool, ctx.Required(0).shape());
    std::fill(mask.mutable_ints().begin(), mask.mutable_ints().end(), 1);
    res.push_back(std::move(mask));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Linear algebra and normalization

using RowMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMatrix>;
using MutMap = Eigen::Map<RowMatrix>;

std::vector<Tensor> MatMulKernel(const OpContext& ctx) {
  Tensor a = ToFloat(ctx.Required(0));
  Tensor b = ToFloat(ctx.Required(1));
  if (a.rank() == 0 || b.rank() == 0) Fail("MatMul of a scalar");
  const bool a_vec = a.rank() == 1;
  const bool b_vec = b.rank() == 1;
  if (a_vec) a = a.Reshaped({1, a.shape()[0]});
  if (b_vec) b = b.Reshaped({b.shape()[0], 1});
  const int64_t m = a.shape()[a.rank() - 2];
  const int64_t k = a.shape()[a.rank() - 1];
  const int64_t n = b.shape()[b.rank() - 1];
  if (b.shape()[b.rank() - 2] != k) {
    Fail("MatMul inner dimensions differ: " + ShapeString(a.shape()) + " x " +
         ShapeString(b.shape()));
  }
  const Shape a_batch(a.shape().begin(), a.shape().end() - 2);
  const Shape b_batch(b.shape().begin(), b.shape().end() - 2);

  Tensor out;
  Shape out_shape;
  if (b_batch.empty()) {
    // [..., M, K] x [K, N]: one GEMM over all leading rows.
    const int64_t rows = a.size() / k;
    out_shape = a_batch;
    out_shape.push_back(m);
    out_shape.push_back(n);
    out = Tensor(DType::kFloat, out_shape);
    MutMap(out.mutable_floats().data(), rows, n).noalias() =
        ConstMap(a.floats().data(), rows, k) * ConstMap(b.floats().data(), k, n);
  } else {
    const Shape batch = BroadcastShapes(a_batch, b_batch);
    out_shape = batch;
    out_shape.push_back(m);
    out_shape.push_back(n);
    out = Tensor(DType::kFloat, out_shape);
    float* po = out.mutable_floats().data();
    ForEachBroadcast<2>(
        batch, {&a_batch, &b_batch},
        [&](int64_t o, const std::array<int64_t, 2>& x) {
          MutMap(po + o * m * n, m, n).noalias() =
              ConstMap(a.floats().data() + x[0] * m * k, m, k) *
              ConstMap(b.floats().data() + x[1] * k * n, k, n);
        });
  }
  if (a_vec || b_vec) {
    Shape squeezed(out_shape.begin(), out_shape.end() - 2);
    if (!a_vec) squeezed.push_back(m);
    if (!b_vec) squeezed.push_back(n);
    out = out.Reshaped(squeezed);
  }
  return One(std::move(out));
}

std::vector<Tensor> GemmKernel(const OpContext& ctx) {
  const Tensor a = ToFloat(ctx.Required(0));
  const Tensor b = ToFloat(ctx.Required(1));
  if (a.rank() != 2 || b.rank() != 2) Fail("Gemm expects 2-D inputs");
  const bool ta = ctx.attrs.GetInt("transA", 0) != 0;
  const bool tb = ctx.attrs.GetInt("transB", 0) != 0;
  const float alpha = ctx.attrs.GetFloat("alpha", 1.0f);
  const float beta = ctx.attrs.GetFloat("beta", 1.0f);
  ConstMap am(a.floats().data(), a.shape()[0], a.shape()[1]);
  ConstMap bm(b.floats().data(), b.shape()[0], b.shape()[1]);
  const int64_t m = ta ? a.shape()[1] : a.shape()[0];
  const int64_t n = tb ? b.shape()[0] : b.shape()[1];
  const int64_t k = ta ? a.shape()[0] : a.shape()[1];
  if ((tb ? b.shape()[1] : b.shape()[0]) != k) Fail("Gemm inner dimensions differ");
  Tensor out(DType::kFloat, {m, n});
  MutMap om(out.mutable_floats().data(), m, n);
  if (ta && tb) {
    om.noalias() = am.transpose() * bm.transpose();
  } else if (ta) {
    om.noalias() = am.transpose() * bm;
  } else if (tb) {
    om.noalias() = am * bm.transpose();
  } else {
    om.noalias() = am * bm;
  }
  if (alpha != 1.0f) om *= alpha;
  if (const Tensor* c = ctx.Input(2); c != nullptr && beta != 0.0f) {
    const Tensor cb = BroadcastTo(ToFloat(*c), {m, n});
    om += beta * ConstMap(cb.floats().data(), m, n);
  }
  return One(std::move(out));
}

template <bool Log>
std::vector<Tensor> SoftmaxKernel(const OpContext& ctx) {
  Tensor out = ToFloat(ctx.Required(0));
  const int64_t rank = out.rank();
  const int64_t default_axis = ctx.opset >= 13 ? -1 : 1;
  const int64_t axis =
      NormalizeAxis(ctx.attrs.GetInt("axis", default_axis), rank);
  int64_t outer = 1;
  for (int64_t i = 0; i < axis; ++i) outer *= out.shape()[i];
  int64_t len = out.shape()[axis];
  int64_t inner = 1;
  for (int64_t i = axis + 1; i < rank; ++i) inner *= out.shape()[i];
  if (ctx.opset < 13) {
    // Coerced to 2-D: softmax over everything from axis on.
    len *= inner;
    inner = 1;
  }
  auto p = out.mutable_floats();
  for (int64_t o = 0; o < outer; ++o) {
    for (int64_t in = 0; in < inner; ++in) {
      const int64_t base = o * len * inner + in;
      float mx = -std::numeric_limits<float>::infinity();
      for (int64_t j = 0; j < len; ++j) mx = std::max(mx, p[base + j * inner]);
      double sum = 0.0;
      for (int64_t j = 0; j < len; ++j) {
        sum += std::exp(static_cast<double>(p[base + j * inner]) - mx);
      }
      const double log_sum = std::log(sum);
      for (int64_t j = 0; j < len; ++j) {
        const double shifted = static_cast<double>(p[base + j * inner]) - mx;
        p[base + j * inner] = static_cast<float>(
            Log ? shifted - log_sum : std::exp(shifted - log_sum));
      }
    }
  }
  return One(std::move(out));
}

enum class ReduceOp { kMean, kSum, kMax, kMin };

template <ReduceOp Op>
std::vector<Tensor> ReduceKernel(const OpContext& ctx) {
  const Tensor& x = ctx.Required(0);
  const int64_t rank = x.rank();
  const int64_t axes_input_opset = Op == ReduceOp::kSum ? 13 : 18;
  std::vector<int64_t> axes = AxesArgument(ctx, axes_input_opset, 1);
  const bool keepdims = ctx.attrs.GetInt("keepdims", 1) != 0;
  if (axes.empty()) {
    if (ctx.attrs.GetInt("noop_with_empty_axes", 0) != 0) return One(x);
    for (int64_t i = 0; i < rank; ++i) axes.push_back(i);
  }
  std::vector<bool> reduced(rank, false);
  for (int64_t a : axes) reduced[NormalizeAxis(a, rank)] = true;
  Shape kept_shape(rank);
  Shape out_shape;
  for (int64_t d = 0; d < rank; ++d) {
    kept_shape[d] = reduced[d] ? 1 : x.shape()[d];
    if (!reduced[d] || keepdims) out_shape.push_back(kept_shape[d]);
  }
  const int64_t out_size = NumElements(kept_shape);
  std::vector<double> acc(out_size, Op == ReduceOp::kMax
                                        ? -std::numeric_limits<double>::infinity()
                                    : Op == ReduceOp::kMin
                                        ? std::numeric_limits<double>::infinity()
                                        : 0.0);
  // Walk the input; the output offset uses zero strides on reduced axes.
  std::vector<int64_t> out_strides(rank, 0);
  int64_t stride = 1;
  for (int64_t d = rank - 1; d >= 0; --d) {
    out_strides[d] = reduced[d] ? 0 : stride;
    stride *= kept_shape[d];
  }
  std::vector<int64_t> counter(rank, 0);
  int64_t dst = 0;
  for (int64_t i = 0; i < x.size(); ++i) {
    const double v = x.AsDouble(i);
    switch (Op) {
      case ReduceOp::kMean:
      case ReduceOp::kSum:
        acc[dst] += v;
        break;
      case ReduceOp::kMax:
        acc[dst] = std::max(acc[dst], v);
        break;
      case ReduceOp::kMin:
        acc[dst] = std::min(acc[dst], v);
        break;
    }
    for (int64_t d = rank - 1; d >= 0; --d) {
      ++counter[d];
      dst += out_strides[d];
      if (counter[d] < x.shape()[d]) break;
      dst -= out_strides[d] * x.shape()[d];
      counter[d] = 0;
    }
  }
  if (Op == ReduceOp::kMean) {
    const double count = static_cast<double>(x.size()) / std::max<int64_t>(out_size, 1);
    for (double& v : acc) v /= count;
  }
  Tensor out(x.dtype(), out_shape);
  for (int64_t i = 0; i < out_size; ++i) {
    if (out.floating()) {
      out.mutable_floats()[i] = static_cast<float>(acc[i]);
    } else {
      out.mutable_ints()[i] = static_cast<int64_t>(acc[i]);
    }
  }
  return One(std::move(out));
}

std::vector<Tensor> LayerNormKernel(const OpContext& ctx) {
  Tensor out = ToFloat(ctx.Required(0));
  const Tensor scale = ToFloat(ctx.Required(1));
  const Tensor* bias_in = ctx.Input(2);
  const Tensor bias = bias_in ? ToFloat(*bias_in) : Tensor();
  const int64_t rank = out.rank();
  const int64_t axis = NormalizeAxis(ctx.attrs.GetInt("axis", -1), rank);
  const double eps = ctx.attrs.GetFloat("epsilon", 1e-5f);
  int64_t outer = 1;
  for (int64_t i = 0; i < axis; ++i) outer *= out.shape()[i];
  const int64_t inner = out.size() / std::max<int64_t>(outer, 1);
  if (scale.size() != inner || (bias_in && bias.size() != inner)) {
    Fail("LayerNormalization scale/bias size mismatch");
  }
  auto p = out.mutable_floats();
  for (int64_t o = 0; o < outer; ++o) {
    float* row = p.data() + o * inner;
    double mean = 0.0;
    for (int64_t j = 0; j < inner; ++j) mean += row[j];
    mean /= inner;
    double var = 0.0;
    for (int64_t j = 0; j < inner; ++j) var += (row[j] - mean) * (row[j] - mean);
    var /= inner;
    const double inv = 1.0 / std::sqrt(var + eps);
    for (int64_t j = 0; j < inner; ++j) {
      double v = (row[j] - mean) * inv * scale.floats()[j];
      if (bias_in) v += bias.floats()[j];
      row[j] = static_cast<float>(v);
    }
  }
  return One(std::move(out));
}

const std::unordered_map<std::string_view, Kernel>& Registry() {
  static const std::unordered_map<std::string_view, Kernel> kRegistry = {
      {"Add", &BinaryKernel<BinOp::kAdd>},
      {"Sub", &BinaryKernel<BinOp::kSub>},
      {"Mul", &BinaryKernel<BinOp::kMul>},
      {"Div", &BinaryKernel<BinOp::kDiv>},
      {"Pow", &BinaryKernel<BinOp::kPow>},
      {"Min", &BinaryKernel<BinOp::kMin>},
      {"Max", &BinaryKernel<BinOp::kMax>},
      {"Mod", &BinaryKernel<BinOp::kMod>},
      {"Sum", &SumKernel},
      {"Equal", &CompareKernel<CmpOp::kEq>},
      {"Less", &CompareKernel<CmpOp::kLt>},
      {"Greater", &CompareKernel<CmpOp::kGt>},
      {"LessOrEqual", &CompareKernel<CmpOp::kLe>},
      {"GreaterOrEqual", &CompareKernel<CmpOp::kGe>},
      {"And", &CompareKernel<CmpOp::kAnd>},
      {"Or", &CompareKernel<CmpOp::kOr>},
      {"Xor", &CompareKernel<CmpOp::kXor>},
      {"Erf", &UnaryKernel<UnOp::kErf>},
      {"Tanh", &UnaryKernel<UnOp::kTanh>},
      {"Sqrt", &UnaryKernel<UnOp::kSqrt>},
      {"Exp", &UnaryKernel<UnOp::kExp>},
      {"Log", &UnaryKernel<UnOp::kLog>},
      {"Neg", &UnaryKernel<UnOp::kNeg>},
      {"Abs", &UnaryKernel<UnOp::kAbs>},
      {"Relu", &UnaryKernel<UnOp::kRelu>},
      {"Sigmoid", &UnaryKernel<UnOp::kSigmoid>},
      {"Reciprocal", &UnaryKernel<UnOp::kReciprocal>},
      {"Floor", &UnaryKernel<UnOp::kFloor>},
      {"Ceil", &UnaryKernel<UnOp::kCeil>},
      {"Not", &UnaryKernel<UnOp::kNot>},
      {"IsNaN", &UnaryKernel<UnOp::kIsNaN>},
      {"IsInf", &UnaryKernel<UnOp::kIsInf>},
      {"Gelu", &GeluKernel},
      {"Clip", &ClipKernel},
      {"Where", &WhereKernel},
      {"Cast", &CastKernel},
      {"Shape", &ShapeKernel},
      {"Size", &SizeKernel},
      {"Reshape", &ReshapeKernel},
      {"Flatten", &FlattenKernel},
      {"Unsqueeze", &UnsqueezeKernel},
      {"Squeeze", &SqueezeKernel},
      {"Concat", &ConcatKernel},
      {"Split", &SplitKernel},
      {"Transpose", &TransposeKernel},
      {"Gather", &GatherKernel},
      {"Slice", &SliceKernel},
      {"Expand", &ExpandKernel},
      {"Tile", &TileKernel},
      {"ConstantOfShape", &ConstantOfShapeKernel},
      {"Range", &RangeKernel},
      {"Dropout", &DropoutKernel},
      {"MatMul", &MatMulKernel},
      {"Gemm", &GemmKernel},
      {"Softmax", &SoftmaxKernel<false>},
      {"LogSoftmax", &SoftmaxKernel<true>},
      {"ReduceMean", &ReduceKernel<ReduceOp::kMean>},
      {"ReduceSum", &ReduceKernel<ReduceOp::kSum>},
      {"ReduceMax", &ReduceKernel<ReduceOp::kMax>},
      {"ReduceMin", &ReduceKernel<ReduceOp::kMin>},
      {"LayerNormalization", &LayerNormKernel},
  };
  return kRegistry;
}

}  // namespace

Kernel FindKernel(std::string_view op_type) {
  const auto& registry = Registry();
  auto it = registry.find(op_type);
  return it == registry.end() ? nullptr : it->second;
}

}  // namespace gruen::onnx
