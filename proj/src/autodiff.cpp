// src/autodiff.cpp

// Copyright 2026  artic authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "artic/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_set>

namespace artic::ad {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

int64_t ceil_div(int64_t a, int64_t b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

NodePtr make_node(std::vector<int64_t> shape, std::vector<NodePtr> parents) {
  auto n = std::make_shared<Node>();
  n->shape = std::move(shape);
  n->values.assign(static_cast<size_t>(n->numel()), 0.0f);
  n->parents = std::move(parents);
  for (const auto& p : n->parents) n->requires_grad |= p->requires_grad;
  return n;
}

void check_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (a.shape() != b.shape()) throw Error(std::string(what) + ": shape mismatch");
}

std::string shape_str(const std::vector<int64_t>& s) {
  std::string out = "[";
  for (size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

}  // namespace

uint64_t Rng::derive(uint64_t seed, std::string_view stream) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : stream) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return splitmix64(seed ^ h);
}

uint64_t Rng::derive(uint64_t seed, uint64_t index) {
  return splitmix64(seed * 0x9E3779B97F4A7C15ull + index + 1);
}

Tensor Tensor::zeros(std::vector<int64_t> shape, bool requires_grad) {
  auto n = make_node(std::move(shape), {});
  n->requires_grad = requires_grad;
  return Tensor(std::move(n));
}

Tensor Tensor::from_values(std::vector<int64_t> shape,
                           std::vector<float> values, bool requires_grad) {
  auto n = make_node(std::move(shape), {});
  if (values.size() != n->values.size())
    throw Error("Tensor::from_values: " + std::to_string(values.size()) +
                " values for shape " + shape_str(n->shape));
  n->values = std::move(values);
  n->requires_grad = requires_grad;
  return Tensor(std::move(n));
}

Tensor Tensor::scalar(float v, bool requires_grad) {
  return from_values({1}, {v}, requires_grad);
}

Tensor conv1d(const Tensor& x, const Tensor& w, const Tensor* bias,
              int stride, int dilation, int padding) {
  if (x.shape().size() != 3 || w.shape().size() != 3)
    throw Error("conv1d: x and w must be rank 3, got " + shape_str(x.shape()) +
                " and " + shape_str(w.shape()));
  if (stride < 1 || dilation < 1 || padding < 0)
    throw Error("conv1d: invalid stride/dilation/padding");
  int64_t B = x.shape()[0], C_in = x.shape()[1], T = x.shape()[2];
  int64_t C_out = w.shape()[0], K = w.shape()[2];
  if (w.shape()[1] != C_in)
    throw Error("conv1d: weight expects " + std::to_string(w.shape()[1]) +
                " input channels, input has " + std::to_string(C_in));
  if (bias != nullptr &&
      (bias->shape().size() != 1 || bias->shape()[0] != C_out))
    throw Error("conv1d: bias must be [C_out]");
  int64_t T_out =
      (T + 2 * static_cast<int64_t>(padding) - static_cast<int64_t>(dilation) * (K - 1) - 1) / stride + 1;
  if (T + 2 * padding < dilation * (K - 1) + 1 || T_out < 1)
    throw Error("conv1d: non-positive output length for input " +
                shape_str(x.shape()));

  std::vector<NodePtr> parents = {x.node(), w.node()};
  if (bias != nullptr) parents.push_back(bias->node());
  auto node = make_node({B, C_out, T_out}, std::move(parents));

  const float* xv = x.values().data();
  const float* wv = w.values().data();
  float* out = node->values.data();
  for (int64_t b = 0; b < B; ++b) {
    for (int64_t co = 0; co < C_out; ++co) {
      float* orow = out + (b * C_out + co) * T_out;
      if (bias != nullptr) {
        float bv = bias->values()[static_cast<size_t>(co)];
        for (int64_t t = 0; t < T_out; ++t) orow[t] = bv;
      }
      for (int64_t ci = 0; ci < C_in; ++ci) {
        const float* xrow = xv + (b * C_in + ci) * T;
        const float* wrow = wv + (co * C_in + ci) * K;
        for (int64_t k = 0; k < K; ++k) {
          float wk = wrow[k];
          int64_t off = k * dilation - padding;
          int64_t t0 = std::max<int64_t>(0, ceil_div(-off, stride));
          int64_t t1 = off > T - 1
                           ? 0
                           : std::min<int64_t>(T_out, (T - 1 - off) / stride + 1);
          for (int64_t t = t0; t < t1; ++t)
            orow[t] += wk * xrow[t * stride + off];
        }
      }
    }
  }

  Node* xn = x.node().get();
  Node* wn = w.node().get();
  Node* bn = bias != nullptr ? bias->node().get() : nullptr;
  node->backprop = [=, B = B, C_in = C_in, T = T, C_out = C_out, K = K,
                    T_out = T_out](Node& self) {
    const float* g = self.grad.data();
    if (xn->requires_grad) {
      xn->ensure_grad();
      float* dx = xn->grad.data();
      const float* wd = wn->values.data();
      for (int64_t b = 0; b < B; ++b)
        for (int64_t co = 0; co < C_out; ++co) {
          const float* grow = g + (b * C_out + co) * T_out;
          for (int64_t ci = 0; ci < C_in; ++ci) {
            float* dxrow = dx + (b * C_in + ci) * T;
            const float* wrow = wd + (co * C_in + ci) * K;
            for (int64_t k = 0; k < K; ++k) {
              float wk = wrow[k];
              int64_t off = k * dilation - padding;
              int64_t t0 = std::max<int64_t>(0, ceil_div(-off, stride));
              int64_t t1 =
                  off > T - 1 ? 0
                              : std::min<int64_t>(T_out, (T - 1 - off) / stride + 1);
              for (int64_t t = t0; t < t1; ++t)
                dxrow[t * stride + off] += wk * grow[t];
            }
          }
        }
    }
    if (wn->requires_grad) {
      wn->ensure_grad();
      float* dw = wn->grad.data();
      const float* xd = xn->values.data();
      for (int64_t b = 0; b < B; ++b)
        for (int64_t co = 0; co < C_out; ++co) {
          const float* grow = g + (b * C_out + co) * T_out;
          for (int64_t ci = 0; ci < C_in; ++ci) {
            const float* xrow = xd + (b * C_in + ci) * T;
            float* dwrow = dw + (co * C_in + ci) * K;
            for (int64_t k = 0; k < K; ++k) {
              int64_t off = k * dilation - padding;
              int64_t t0 = std::max<int64_t>(0, ceil_div(-off, stride));
              int64_t t1 =
                  off > T - 1 ? 0
                              : std::min<int64_t>(T_out, (T - 1 - off) / stride + 1);
              float acc = 0.0f;
              for (int64_t t = t0; t < t1; ++t)
                acc += grow[t] * xrow[t * stride + off];
              dwrow[k] += acc;
            }
          }
        }
    }
    if (bn != nullptr && bn->requires_grad) {
      bn->ensure_grad();
      float* db = bn->grad.data();
      for (int64_t b = 0; b < B; ++b)
        for (int64_t co = 0; co < C_out; ++co) {
          const float* grow = g + (b * C_out + co) * T_out;
          float acc = 0.0f;
          for (int64_t t = 0; t < T_out; ++t) acc += grow[t];
          db[co] += acc;
        }
    }
  };
  return Tensor(std::move(node));
}

Tensor conv_transpose1d(const Tensor& x, const Tensor& w, const Tensor* bias,
                        int stride, int padding) {
  if (x.shape().size() != 3 || w.shape().size() != 3)
    throw Error("conv_transpose1d: x and w must be rank 3");
  if (stride < 1 || padding < 0)
    throw Error("conv_transpose1d: invalid stride/padding");
  int64_t B = x.shape()[0], C_in = x.shape()[1], T = x.shape()[2];
  int64_t C_out = w.shape()[1], K = w.shape()[2];
  if (w.shape()[0] != C_in)
    throw Error("conv_transpose1d: weight expects " +
                std::to_string(w.shape()[0]) + " input channels, input has " +
                std::to_string(C_in));
  if (bias != nullptr &&
      (bias->shape().size() != 1 || bias->shape()[0] != C_out))
    throw Error("conv_transpose1d: bias must be [C_out]");
  int64_t T_out = (T - 1) * stride - 2 * static_cast<int64_t>(padding) + K;
  if (T_out < 1)
    throw Error("conv_transpose1d: non-positive output length");

  std::vector<NodePtr> parents = {x.node(), w.node()};
  if (bias != nullptr) parents.push_back(bias->node());
  auto node = make_node({B, C_out, T_out}, std::move(parents));

  // ti range with 0 <= ti*stride + k - padding < T_out; captured by value
  // because the backprop closure outlives this frame.
  auto ti_range = [stride, padding, T, T_out](int64_t k, int64_t& lo,
                                              int64_t& hi) {
    lo = std::max<int64_t>(0, ceil_div(padding - k, stride));
    int64_t last = T_out - 1 + padding - k;
    hi = last < 0 ? 0 : std::min<int64_t>(T, last / stride + 1);
  };

  const float* xv = x.values().data();
  const float* wv = w.values().data();
  float* out = node->values.data();
  for (int64_t b = 0; b < B; ++b) {
    if (bias != nullptr)
      for (int64_t co = 0; co < C_out; ++co) {
        float bv = bias->values()[static_cast<size_t>(co)];
        float* orow = out + (b * C_out + co) * T_out;
        for (int64_t t = 0; t < T_out; ++t) orow[t] = bv;
      }
    for (int64_t ci = 0; ci < C_in; ++ci) {
      const float* xrow = xv + (b * C_in + ci) * T;
      for (int64_t co = 0; co < C_out; ++co) {
        float* orow = out + (b * C_out + co) * T_out;
        const float* wrow = wv + (ci * C_out + co) * K;
        for (int64_t k = 0; k < K; ++k) {
          float wk = wrow[k];
          int64_t lo, hi;
          ti_range(k, lo, hi);
          for (int64_t ti = lo; ti < hi; ++ti)
            orow[ti * stride + k - padding] += wk * xrow[ti];
        }
      }
    }
  }

  Node* xn = x.node().get();
  Node* wn = w.node().get();
  Node* bn = bias != nullptr ? bias->node().get() : nullptr;
  node->backprop = [=, B = B, C_in = C_in, T = T, C_out = C_out, K = K,
                    T_out = T_out](Node& self) {
    const float* g = self.grad.data();
    if (xn->requires_grad) {
      xn->ensure_grad();
      float* dx = xn->grad.data();
      const float* wd = wn->values.data();
      for (int64_t b = 0; b < B; ++b)
        for (int64_t ci = 0; ci < C_in; ++ci) {
          float* dxrow = dx + (b * C_in + ci) * T;
          for (int64_t co = 0; co < C_out; ++co) {
            const float* grow = g + (b * C_out + co) * T_out;
            const float* wrow = wd + (ci * C_out + co) * K;
            for (int64_t k = 0; k < K; ++k) {
              float wk = wrow[k];
              int64_t lo, hi;
              ti_range(k, lo, hi);
              for (int64_t ti = lo; ti < hi; ++ti)
                dxrow[ti] += wk * grow[ti * stride + k - padding];
            }
          }
        }
    }
    if (wn->requires_grad) {
      wn->ensure_grad();
      float* dw = wn->grad.data();
      const float* xd = xn->values.data();
      for (int64_t b = 0; b < B; ++b)
        for (int64_t ci = 0; ci < C_in; ++ci) {
          const float* xrow = xd + (b * C_in + ci) * T;
          for (int64_t co = 0; co < C_out; ++co) {
            const float* grow = g + (b * C_out + co) * T_out;
            float* dwrow = dw + (ci * C_out + co) * K;
            for (int64_t k = 0; k < K; ++k) {
              int64_t lo, hi;
              ti_range(k, lo, hi);
              float acc = 0.0f;
              for (int64_t ti = lo; ti < hi; ++ti)
                acc += xrow[ti] * grow[ti * stride + k - padding];
              dwrow[k] += acc;
            }
          }
        }
    }
    if (bn != nullptr && bn->requires_grad) {
      bn->ensure_grad();
      float* db = bn->grad.data();
      for (int64_t b = 0; b < B; ++b)
        for (int64_t co = 0; co < C_out; ++co) {
          const float* grow = g + (b * C_out + co) * T_out;
          float acc = 0.0f;
          for (int64_t t = 0; t < T_out; ++t) acc += grow[t];
          db[co] += acc;
        }
    }
  };
  return Tensor(std::move(node));
}

namespace {

template <typename Fwd, typename Bwd>
Tensor unary_op(const Tensor& x, Fwd fwd, Bwd bwd) {
  auto node = make_node(x.shape(), {x.node()});
  const auto& xv = x.values();
  for (size_t i = 0; i < xv.size(); ++i) node->values[i] = fwd(xv[i]);
  Node* xn = x.node().get();
  node->backprop = [xn, bwd](Node& self) {
    if (!xn->requires_grad) return;
    xn->ensure_grad();
    for (size_t i = 0; i < self.grad.size(); ++i)
      xn->grad[i] += bwd(xn->values[i], self.values[i]) * self.grad[i];
  };
  return Tensor(std::move(node));
}

}  // namespace

Tensor leaky_relu(const Tensor& x, float slope) {
  return unary_op(
      x, [slope](float v) { return v >= 0.0f ? v : slope * v; },
      [slope](float v, float) { return v >= 0.0f ? 1.0f : slope; });
}

Tensor tanh(const Tensor& x) {
  return unary_op(
      x, [](float v) { return std::tanh(v); },
      [](float, float y) { return 1.0f - y * y; });
}

Tensor log(const Tensor& x) {
  for (float v : x.values())
    if (v <= 0.0f) throw Error("log: non-positive input value");
  return unary_op(
      x, [](float v) { return std::log(v); },
      [](float v, float) { return 1.0f / v; });
}

Tensor clamp_min(const Tensor& x, float floor) {
  return unary_op(
      x, [floor](float v) { return v < floor ? floor : v; },
      [floor](float v, float) { return v > floor ? 1.0f : 0.0f; });
}

Tensor scale(const Tensor& x, float c) {
  return unary_op(
      x, [c](float v) { return c * v; }, [c](float, float) { return c; });
}

Tensor add(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "add");
  auto node = make_node(a.shape(), {a.node(), b.node()});
  const auto& av = a.values();
  const auto& bv = b.values();
  for (size_t i = 0; i < av.size(); ++i) node->values[i] = av[i] + bv[i];
  Node* an = a.node().get();
  Node* bn = b.node().get();
  node->backprop = [an, bn](Node& self) {
    for (Node* n : {an, bn}) {
      if (!n->requires_grad) continue;
      n->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i) n->grad[i] += self.grad[i];
    }
  };
  return Tensor(std::move(node));
}

Tensor mul(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "mul");
  auto node = make_node(a.shape(), {a.node(), b.node()});
  const auto& av = a.values();
  const auto& bv = b.values();
  for (size_t i = 0; i < av.size(); ++i) node->values[i] = av[i] * bv[i];
  Node* an = a.node().get();
  Node* bn = b.node().get();
  node->backprop = [an, bn](Node& self) {
    if (an->requires_grad) {
      an->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i)
        an->grad[i] += bn->values[i] * self.grad[i];
    }
    if (bn->requires_grad) {
      bn->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i)
        bn->grad[i] += an->values[i] * self.grad[i];
    }
  };
  return Tensor(std::move(node));
}

Tensor concat(std::span<const Tensor> parts, int axis) {
  if (parts.empty()) throw Error("concat: no inputs");
  size_t rank = parts[0].shape().size();
  if (axis < 0 || static_cast<size_t>(axis) >= rank)
    throw Error("concat: axis out of range");
  std::vector<int64_t> shape = parts[0].shape();
  int64_t axis_total = 0;
  for (const auto& p : parts) {
    if (p.shape().size() != rank) throw Error("concat: rank mismatch");
    for (size_t d = 0; d < rank; ++d)
      if (d != static_cast<size_t>(axis) && p.shape()[d] != shape[d])
        throw Error("concat: shape mismatch off the concat axis");
    axis_total += p.shape()[axis];
  }
  shape[axis] = axis_total;

  std::vector<NodePtr> parents;
  for (const auto& p : parts) parents.push_back(p.node());
  auto node = make_node(shape, std::move(parents));

  int64_t outer = 1, inner = 1;
  for (int d = 0; d < axis; ++d) outer *= shape[d];
  for (size_t d = axis + 1; d < rank; ++d) inner *= shape[d];

  int64_t offset = 0;
  for (const auto& p : parts) {
    int64_t pa = p.shape()[axis];
    const float* src = p.values().data();
    for (int64_t o = 0; o < outer; ++o)
      std::memcpy(node->values.data() + ((o * axis_total + offset) * inner),
                  src + o * pa * inner,
                  static_cast<size_t>(pa * inner) * sizeof(float));
    offset += pa;
  }

  std::vector<Node*> raw;
  std::vector<int64_t> sizes;
  for (const auto& p : parts) {
    raw.push_back(p.node().get());
    sizes.push_back(p.shape()[axis]);
  }
  node->backprop = [raw, sizes, outer, inner, axis_total](Node& self) {
    int64_t offset = 0;
    for (size_t i = 0; i < raw.size(); ++i) {
      Node* n = raw[i];
      int64_t pa = sizes[i];
      if (n->requires_grad) {
        n->ensure_grad();
        for (int64_t o = 0; o < outer; ++o) {
          const float* g =
              self.grad.data() + (o * axis_total + offset) * inner;
          float* dst = n->grad.data() + o * pa * inner;
          for (int64_t j = 0; j < pa * inner; ++j) dst[j] += g[j];
        }
      }
      offset += pa;
    }
  };
  return Tensor(std::move(node));
}

Tensor slice(const Tensor& x, int axis, int64_t start, int64_t len) {
  size_t rank = x.shape().size();
  if (axis < 0 || static_cast<size_t>(axis) >= rank)
    throw Error("slice: axis out of range");
  int64_t dim = x.shape()[axis];
  if (start < 0 || len < 1 || start + len > dim)
    throw Error("slice: range [" + std::to_string(start) + ", " +
                std::to_string(start + len) + ") out of bounds for dim " +
                std::to_string(dim));
  std::vector<int64_t> shape = x.shape();
  shape[axis] = len;
  auto node = make_node(shape, {x.node()});

  int64_t outer = 1, inner = 1;
  for (int d = 0; d < axis; ++d) outer *= x.shape()[d];
  for (size_t d = axis + 1; d < rank; ++d) inner *= x.shape()[d];

  for (int64_t o = 0; o < outer; ++o)
    std::memcpy(node->values.data() + o * len * inner,
                x.values().data() + (o * dim + start) * inner,
                static_cast<size_t>(len * inner) * sizeof(float));

  Node* xn = x.node().get();
  node->backprop = [xn, outer, inner, dim, start, len](Node& self) {
    if (!xn->requires_grad) return;
    xn->ensure_grad();
    for (int64_t o = 0; o < outer; ++o) {
      const float* g = self.grad.data() + o * len * inner;
      float* dst = xn->grad.data() + (o * dim + start) * inner;
      for (int64_t j = 0; j < len * inner; ++j) dst[j] += g[j];
    }
  };
  return Tensor(std::move(node));
}

Tensor sum(const Tensor& x) {
  auto node = make_node({1}, {x.node()});
  double acc = 0.0;
  for (float v : x.values()) acc += v;
  node->values[0] = static_cast<float>(acc);
  Node* xn = x.node().get();
  node->backprop = [xn](Node& self) {
    if (!xn->requires_grad) return;
    xn->ensure_grad();
    float g = self.grad[0];
    for (auto& d : xn->grad) d += g;
  };
  return Tensor(std::move(node));
}

Tensor l1_loss(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "l1_loss");
  auto node = make_node({1}, {a.node(), b.node()});
  const auto& av = a.values();
  const auto& bv = b.values();
  double acc = 0.0;
  for (size_t i = 0; i < av.size(); ++i)
    acc += std::abs(static_cast<double>(av[i]) - bv[i]);
  int64_t n = static_cast<int64_t>(av.size());
  node->values[0] = static_cast<float>(acc / n);
  Node* an = a.node().get();
  Node* bn = b.node().get();
  node->backprop = [an, bn, n](Node& self) {
    float g = self.grad[0] / static_cast<float>(n);
    for (size_t i = 0; i < an->values.size(); ++i) {
      float diff = an->values[i] - bn->values[i];
      float s = diff > 0.0f ? 1.0f : (diff < 0.0f ? -1.0f : 0.0f);
      if (an->requires_grad) {
        an->ensure_grad();
        an->grad[i] += s * g;
      }
      if (bn->requires_grad) {
        bn->ensure_grad();
        bn->grad[i] -= s * g;
      }
    }
  };
  return Tensor(std::move(node));
}

Tensor merge_batch_time(const Tensor& x) {
  if (x.shape().size() != 3 || x.shape()[1] != 1)
    throw Error("merge_batch_time: expects [B, 1, T], got " +
                shape_str(x.shape()));
  int64_t B = x.shape()[0], T = x.shape()[2];
  auto node = make_node({1, 1, B * T}, {x.node()});
  node->values = x.values();  // [b][0][t] is already time-contiguous
  Node* xn = x.node().get();
  node->backprop = [xn](Node& self) {
    if (!xn->requires_grad) return;
    xn->ensure_grad();
    for (size_t i = 0; i < self.grad.size(); ++i) xn->grad[i] += self.grad[i];
  };
  return Tensor(std::move(node));
}

void backward(const Tensor& loss) {
  if (!loss.defined()) throw Error("backward: undefined tensor");
  Node* root = loss.node().get();
  if (root->numel() != 1) throw Error("backward: loss must be scalar");
  if (!root->requires_grad) return;  // constant graph: nothing to populate

  // Reverse DFS post-order over the parent DAG = consumers before producers.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, size_t>> stack;
  stack.emplace_back(root, 0);
  visited.insert(root);
  while (!stack.empty()) {
    Node* n = stack.back().first;
    size_t& idx = stack.back().second;
    if (idx < n->parents.size()) {
      Node* p = n->parents[idx++].get();
      if (p->requires_grad && visited.insert(p).second)
        stack.emplace_back(p, 0);
    } else {
      order.push_back(n);
      stack.pop_back();
    }
  }

  root->ensure_grad();
  root->grad[0] += 1.0f;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->backprop && !n->grad.empty()) n->backprop(*n);
  }
}

void AdamState::init(std::span<const Tensor> params) {
  m.clear();
  v.clear();
  for (const auto& p : params) {
    m.emplace_back(p.values().size(), 0.0f);
    v.emplace_back(p.values().size(), 0.0f);
  }
}

void adam_step(std::span<Tensor> params, AdamState& state) {
  if (!state.initialized()) state.init(params);
  if (state.m.size() != params.size())
    throw Error("adam_step: state was initialized for a different parameter "
                "list");
  for (size_t i = 0; i < params.size(); ++i)
    if (!params[i].has_grad())
      throw Error("adam_step: parameter " + std::to_string(i) +
                  " has no gradient");

  state.step += 1;
  float b1 = state.cfg.beta1, b2 = state.cfg.beta2;
  float bc1 = 1.0f - std::pow(b1, static_cast<float>(state.step));
  float bc2 = 1.0f - std::pow(b2, static_cast<float>(state.step));

  for (size_t i = 0; i < params.size(); ++i) {
    auto& p = params[i].values();
    auto& g = params[i].grad();
    auto& mi = state.m[i];
    auto& vi = state.v[i];
    for (size_t j = 0; j < p.size(); ++j) {
      mi[j] = b1 * mi[j] + (1.0f - b1) * g[j];
      vi[j] = b2 * vi[j] + (1.0f - b2) * g[j] * g[j];
      float mhat = mi[j] / bc1;
      float vhat = vi[j] / bc2;
      p[j] -= state.cfg.lr * mhat / (std::sqrt(vhat) + state.cfg.eps);
    }
    params[i].zero_grad();
  }
}

}  // namespace artic::ad
