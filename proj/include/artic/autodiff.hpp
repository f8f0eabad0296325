// include/artic/autodiff.hpp

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

// Reverse-mode autodiff over dense f32 tensors, sized for a 1-D
// convolutional vocoder. Ops evaluate eagerly and record a tape; there is
// no broadcasting beyond bias addition, and every op uses a fixed
// single-threaded summation order so runs are bit-reproducible. Scalar
// reductions accumulate in double and round once.

#ifndef ARTIC_AUTODIFF_HPP_
#define ARTIC_AUTODIFF_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "artic/types.hpp"

namespace artic::ad {

// Deterministic RNG with platform-stable float mapping (std::mt19937 is
// bit-specified; the distributions in <random> are not, so we do not use
// them).
class Rng {
 public:
  explicit Rng(uint64_t seed)
      : gen_(static_cast<uint32_t>(seed ^ (seed >> 32))) {}

  uint32_t next_u32() { return gen_(); }
  uint64_t next_u64() {
    uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }
  // Uniform in [lo, hi) with 24 mantissa bits.
  float uniform(float lo, float hi) {
    float u = static_cast<float>(next_u32() >> 8) * (1.0f / 16777216.0f);
    return lo + (hi - lo) * u;
  }
  double uniform_d(double lo, double hi) {
    double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int64_t next_index(int64_t n) {
    if (n <= 0) throw Error("Rng::next_index: n must be positive");
    return static_cast<int64_t>(next_u64() % static_cast<uint64_t>(n));
  }

  // Named substream derivation (FNV-1a over the name, mixed with the seed).
  static uint64_t derive(uint64_t seed, std::string_view stream);
  static uint64_t derive(uint64_t seed, uint64_t index);

 private:
  std::mt19937 gen_;
};

struct Node;
using NodePtr = std::shared_ptr<Node>;

struct Node {
  std::vector<int64_t> shape;
  std::vector<float> values;
  std::vector<float> grad;  // sized lazily; empty means "all zero"
  bool requires_grad = false;
  std::vector<NodePtr> parents;
  std::function<void(Node&)> backprop;  // pull this->grad into parents

  int64_t numel() const {
    int64_t n = 1;
    for (int64_t d : shape) n *= d;
    return n;
  }
  void ensure_grad() {
    if (grad.empty()) grad.assign(values.size(), 0.0f);
  }
};

// Value-semantics handle to a tape node.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(NodePtr node) : node_(std::move(node)) {}

  static Tensor zeros(std::vector<int64_t> shape, bool requires_grad = false);
  static Tensor from_values(std::vector<int64_t> shape,
                            std::vector<float> values,
                            bool requires_grad = false);
  static Tensor scalar(float v, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const std::vector<int64_t>& shape() const { return node_->shape; }
  int64_t numel() const { return node_->numel(); }
  std::vector<float>& values() { return node_->values; }
  const std::vector<float>& values() const { return node_->values; }
  std::vector<float>& grad() {
    node_->ensure_grad();
    return node_->grad;
  }
  bool has_grad() const { return !node_->grad.empty(); }
  bool requires_grad() const { return node_->requires_grad; }
  float item() const {
    if (numel() != 1) throw Error("Tensor::item: tensor is not scalar");
    return node_->values[0];
  }
  void zero_grad() { node_->grad.clear(); }
  NodePtr node() const { return node_; }

 private:
  NodePtr node_;
};

// x: [B, C_in, T], w: [C_out, C_in, K], bias: [C_out] or null.
// Cross-correlation semantics; T' = floor((T + 2p - d(K-1) - 1)/s) + 1.
Tensor conv1d(const Tensor& x, const Tensor& w, const Tensor* bias,
              int stride = 1, int dilation = 1, int padding = 0);

// x: [B, C_in, T], w: [C_in, C_out, K], bias: [C_out] or null.
// Adjoint of conv1d with the same geometry; T' = (T-1)s - 2p + K.
Tensor conv_transpose1d(const Tensor& x, const Tensor& w, const Tensor* bias,
                        int stride = 1, int padding = 0);

Tensor leaky_relu(const Tensor& x, float slope = 0.1f);
Tensor tanh(const Tensor& x);
Tensor add(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& x, float c);
Tensor log(const Tensor& x);
Tensor clamp_min(const Tensor& x, float floor);
Tensor concat(std::span<const Tensor> parts, int axis);
Tensor slice(const Tensor& x, int axis, int64_t start, int64_t len);
Tensor sum(const Tensor& x);
Tensor l1_loss(const Tensor& a, const Tensor& b);
// [B, 1, T] -> [1, 1, B*T]; batch items are time-contiguous, so this is a
// pure reshape.
Tensor merge_batch_time(const Tensor& x);

// Populates grads of every reachable requires_grad tensor. Accumulation is
// additive; leaf grads persist until explicitly zeroed (adam_step does).
void backward(const Tensor& loss);

struct AdamConfig {
  float lr = 2e-4f;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float eps = 1e-8f;
};

// Standard Adam with bias correction, all in f32:
//   m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g*g
//   p <- p - lr * (m/(1-b1^t)) / (sqrt(v/(1-b2^t)) + eps)
struct AdamState {
  AdamConfig cfg;
  int64_t step = 0;
  std::vector<std::vector<float>> m;
  std::vector<std::vector<float>> v;

  void init(std::span<const Tensor> params);
  bool initialized() const { return !m.empty(); }
};

// Applies one update and zeroes the parameter grads.
void adam_step(std::span<Tensor> params, AdamState& state);

}  // namespace artic::ad

#endif  // ARTIC_AUTODIFF_HPP_
