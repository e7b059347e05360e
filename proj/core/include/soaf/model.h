// Copyright 2026 The soaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOAF_MODEL_H_
#define SOAF_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "soaf/dsp.h"
#include "soaf/posenc.h"

namespace soaf {

enum class OutputMode { kMask, kRir };

const char* OutputModeName(OutputMode mode);
OutputMode ParseOutputMode(const std::string& name);

struct ModelConfig {
  int num_directions = 1024;  // G
  int num_bins = 257;         // F, mask mode
  int rir_length = 0;         // T, RIR mode
  OutputMode mode = OutputMode::kMask;
  int acoustic_width = 128;
  int channel_width = 128;
  std::vector<int> hidden = {256, 256};
  PosEncConfig posenc;
  // Width of an optional extra feature vector fused next to F_ac and the
  // positional encoding. 0 disables it.
  int extra_width = 0;
  // When false the acoustic and attended features are replaced by zeros.
  bool acoustic_features = true;

  // F in mask mode, T in RIR mode.
  int output_width() const {
    return mode == OutputMode::kMask ? num_bins : rir_length;
  }
};

void ValidateModelConfig(const ModelConfig& config);

// Dense layer y = W x + b. W is stored column-major at `offset`, followed by
// b, inside the model's flat parameter vector.
struct LayerShape {
  std::string name;
  int out = 0;
  int in = 0;
  size_t offset = 0;
  size_t size() const { return static_cast<size_t>(out) * (in + 1); }
};

// Acoustic encoder (G -> A, ReLU), shared channel encoder (G -> C, ReLU),
// trunk MLP over [F_ac, posenc, extra] producing F_agg, a softplus mixture
// head over F_agg and a shared tanh difference head over [F_agg, h_c].
// In RIR mode there is no mixture head and the difference head is linear
// with T outputs.
class MlpModel {
 public:
  using MatrixMap = Eigen::Map<Eigen::MatrixXd>;
  using ConstMatrixMap = Eigen::Map<const Eigen::MatrixXd>;
  using VectorMap = Eigen::Map<Eigen::VectorXd>;
  using ConstVectorMap = Eigen::Map<const Eigen::VectorXd>;

  // All parameters zero.
  explicit MlpModel(ModelConfig config);

  const ModelConfig& config() const { return config_; }
  const std::vector<LayerShape>& layers() const { return layers_; }
  size_t num_parameters() const { return params_.size(); }
  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  int acoustic_layer() const { return 0; }
  int channel_layer() const { return 1; }
  int trunk_layer(int i) const { return 2 + i; }
  int num_trunk_layers() const {
    return static_cast<int>(config_.hidden.size());
  }
  // -1 in RIR mode.
  int mixture_layer() const { return mixture_layer_; }
  int diff_layer() const { return diff_layer_; }

  ConstMatrixMap Weight(int layer) const;
  ConstVectorMap Bias(int layer) const;
  MatrixMap MutableWeight(int layer);
  VectorMap MutableBias(int layer);

  // He-uniform weights for ReLU layers, Glorot-uniform for output heads,
  // zero biases.
  void InitializeRandom(std::uint64_t seed);

 private:
  ModelConfig config_;
  std::vector<LayerShape> layers_;
  std::vector<double> params_;
  int mixture_layer_ = -1;
  int diff_layer_ = -1;
};

struct ModelInput {
  std::vector<double> local;  // F'_ac, length G
  std::vector<double> left;   // F'_l
  std::vector<double> right;  // F'_r
  std::vector<double> posenc;
  std::vector<double> extra;  // empty when extra_width == 0
};

void ValidateModelInput(const MlpModel& model, const ModelInput& input);

// Mask mode: mixture = m_m (F), left/right = m_d^l, m_d^r (F).
// RIR mode: mixture is empty, left/right are the T-sample responses.
struct ModelOutput {
  std::vector<double> mixture;
  std::vector<double> left;
  std::vector<double> right;
};

// Inputs stacked column-wise, one column per sample.
struct BatchInput {
  Eigen::MatrixXd local;
  Eigen::MatrixXd left;
  Eigen::MatrixXd right;
  Eigen::MatrixXd posenc;
  Eigen::MatrixXd extra;

  int size() const { return static_cast<int>(posenc.cols()); }
};

BatchInput MakeBatch(const MlpModel& model,
                     std::span<const ModelInput* const> inputs);

// Intermediate activations kept for the backward pass.
struct ForwardPass {
  Eigen::MatrixXd acoustic_pre;  // Z_a
  Eigen::MatrixXd trunk_input;   // [relu(Z_a); posenc; extra]
  std::vector<Eigen::MatrixXd> trunk_pre;
  std::vector<Eigen::MatrixXd> trunk_out;
  Eigen::MatrixXd channel_pre[2];
  Eigen::MatrixXd fused[2];  // [F_agg; h_c]
  Eigen::MatrixXd mixture_pre;
  Eigen::MatrixXd diff_pre[2];

  Eigen::MatrixXd mixture;  // activated heads, one column per sample
  Eigen::MatrixXd channel_out[2];
};

ForwardPass Forward(const MlpModel& model, const BatchInput& batch);

// Accumulates dL/dtheta into `grad` (length num_parameters) given the loss
// gradient w.r.t. the activated head outputs. `d_mixture` is ignored in RIR
// mode.
void Backward(const MlpModel& model, const BatchInput& batch,
              const ForwardPass& pass, const Eigen::MatrixXd& d_mixture,
              const Eigen::MatrixXd& d_left, const Eigen::MatrixXd& d_right,
              std::span<double> grad);

ModelOutput Predict(const MlpModel& model, const ModelInput& input);

// relu(W_a x + b_a).
std::vector<double> EncodeAcoustic(const MlpModel& model,
                                   std::span<const double> feature);

// Repeats per-bin mask-mode outputs across `num_frames` frames.
MaskSet BroadcastMasks(const ModelOutput& output, int num_frames);

}  // namespace soaf

#endif  // SOAF_MODEL_H_
