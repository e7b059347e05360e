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

#include "soaf/model.h"

#include <cmath>
#include <random>

#include "soaf/error.h"

namespace soaf {
namespace {

using Eigen::MatrixXd;

double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

MatrixXd Relu(const MatrixXd& z) { return z.cwiseMax(0.0); }

MatrixXd ReluGrad(const MatrixXd& upstream, const MatrixXd& pre) {
  return upstream.cwiseProduct(
      pre.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; }));
}

MatrixXd Affine(const MlpModel& model, int layer, const MatrixXd& x) {
  return (model.Weight(layer) * x).colwise() + model.Bias(layer);
}

// dW += dz x^T, db += rowsum(dz).
void AccumulateLayer(const LayerShape& shape, const MatrixXd& dz,
                     const MatrixXd& x, std::span<double> grad) {
  Eigen::Map<MatrixXd> gw(grad.data() + shape.offset, shape.out, shape.in);
  Eigen::Map<Eigen::VectorXd> gb(
      grad.data() + shape.offset + static_cast<size_t>(shape.out) * shape.in,
      shape.out);
  gw.noalias() += dz * x.transpose();
  gb += dz.rowwise().sum();
}

void CheckLength(const std::vector<double>& v, int expected, const char* what) {
  if (static_cast<int>(v.size()) != expected) {
    throw DomainError(std::string(what) + " has length " +
                      std::to_string(v.size()) + ", expected " +
                      std::to_string(expected));
  }
}

}  // namespace

const char* OutputModeName(OutputMode mode) {
  return mode == OutputMode::kMask ? "mask" : "rir";
}

OutputMode ParseOutputMode(const std::string& name) {
  if (name == "mask") return OutputMode::kMask;
  if (name == "rir") return OutputMode::kRir;
  throw ValidationError("unknown output mode '" + name + "'");
}

void ValidateModelConfig(const ModelConfig& config) {
  if (config.num_directions < 1)
    throw ValidationError("num_directions must be >= 1");
  if (config.acoustic_width < 1 || config.channel_width < 1) {
    throw ValidationError("encoder widths must be >= 1");
  }
  if (config.hidden.empty()) throw ValidationError("at least one hidden layer");
  for (int h : config.hidden) {
    if (h < 1) throw ValidationError("hidden widths must be >= 1");
  }
  if (config.extra_width < 0) throw ValidationError("extra_width must be >= 0");
  if (config.mode == OutputMode::kMask && config.num_bins < 1) {
    throw ValidationError("num_bins must be >= 1");
  }
  if (config.mode == OutputMode::kRir && config.rir_length < 1) {
    throw ValidationError("rir_length must be >= 1");
  }
  ValidatePosEncConfig(config.posenc);
}

MlpModel::MlpModel(ModelConfig config) : config_(std::move(config)) {
  ValidateModelConfig(config_);
  size_t offset = 0;
  auto add = [&](std::string name, int out, int in) {
    layers_.push_back({std::move(name), out, in, offset});
    offset += layers_.back().size();
    return static_cast<int>(layers_.size()) - 1;
  };
  const int g = config_.num_directions;
  add("acoustic_encoder", config_.acoustic_width, g);
  add("channel_encoder", config_.channel_width, g);
  int width =
      config_.acoustic_width + PosEncSize(config_.posenc) + config_.extra_width;
  for (size_t i = 0; i < config_.hidden.size(); ++i) {
    add("trunk_" + std::to_string(i), config_.hidden[i], width);
    width = config_.hidden[i];
  }
  if (config_.mode == OutputMode::kMask) {
    mixture_layer_ = add("mixture_head", config_.num_bins, width);
  }
  diff_layer_ =
      add(config_.mode == OutputMode::kMask ? "difference_head" : "rir_head",
          config_.output_width(), width + config_.channel_width);
  params_.assign(offset, 0.0);
}

MlpModel::ConstMatrixMap MlpModel::Weight(int layer) const {
  const LayerShape& s = layers_.at(layer);
  return ConstMatrixMap(params_.data() + s.offset, s.out, s.in);
}

MlpModel::ConstVectorMap MlpModel::Bias(int layer) const {
  const LayerShape& s = layers_.at(layer);
  return ConstVectorMap(
      params_.data() + s.offset + static_cast<size_t>(s.out) * s.in, s.out);
}

MlpModel::MatrixMap MlpModel::MutableWeight(int layer) {
  const LayerShape& s = layers_.at(layer);
  return MatrixMap(params_.data() + s.offset, s.out, s.in);
}

MlpModel::VectorMap MlpModel::MutableBias(int layer) {
  const LayerShape& s = layers_.at(layer);
  return VectorMap(
      params_.data() + s.offset + static_cast<size_t>(s.out) * s.in, s.out);
}

void MlpModel::InitializeRandom(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int l = 0; l < static_cast<int>(layers_.size()); ++l) {
    const LayerShape& s = layers_[l];
    const bool head = l == mixture_layer_ || l == diff_layer_;
    const double limit =
        head ? std::sqrt(6.0 / (s.in + s.out)) : std::sqrt(6.0 / s.in);
    std::uniform_real_distribution<double> dist(-limit, limit);
    auto w = MutableWeight(l);
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = dist(rng);
    }
    MutableBias(l).setZero();
  }
}

void ValidateModelInput(const MlpModel& model, const ModelInput& input) {
  const ModelConfig& c = model.config();
  CheckLength(input.local, c.num_directions, "local feature");
  CheckLength(input.left, c.num_directions, "left feature");
  CheckLength(input.right, c.num_directions, "right feature");
  CheckLength(input.posenc, PosEncSize(c.posenc), "positional encoding");
  CheckLength(input.extra, c.extra_width, "extra feature");
}

BatchInput MakeBatch(const MlpModel& model,
                     std::span<const ModelInput* const> inputs) {
  const ModelConfig& c = model.config();
  const int n = static_cast<int>(inputs.size());
  BatchInput b;
  b.local = MatrixXd::Zero(c.num_directions, n);
  b.left = MatrixXd::Zero(c.num_directions, n);
  b.right = MatrixXd::Zero(c.num_directions, n);
  b.posenc.resize(PosEncSize(c.posenc), n);
  b.extra.resize(c.extra_width, n);
  for (int j = 0; j < n; ++j) {
    const ModelInput& in = *inputs[j];
    ValidateModelInput(model, in);
    if (c.acoustic_features) {
      b.local.col(j) =
          Eigen::Map<const Eigen::VectorXd>(in.local.data(), c.num_directions);
      b.left.col(j) =
          Eigen::Map<const Eigen::VectorXd>(in.left.data(), c.num_directions);
      b.right.col(j) =
          Eigen::Map<const Eigen::VectorXd>(in.right.data(), c.num_directions);
    }
    b.posenc.col(j) =
        Eigen::Map<const Eigen::VectorXd>(in.posenc.data(), b.posenc.rows());
    if (c.extra_width > 0) {
      b.extra.col(j) =
          Eigen::Map<const Eigen::VectorXd>(in.extra.data(), c.extra_width);
    }
  }
  return b;
}

ForwardPass Forward(const MlpModel& model, const BatchInput& batch) {
  const ModelConfig& c = model.config();
  const int n = batch.size();
  ForwardPass p;
  p.acoustic_pre = Affine(model, model.acoustic_layer(), batch.local);

  const int pe = static_cast<int>(batch.posenc.rows());
  p.trunk_input.resize(c.acoustic_width + pe + c.extra_width, n);
  p.trunk_input.topRows(c.acoustic_width) = Relu(p.acoustic_pre);
  p.trunk_input.middleRows(c.acoustic_width, pe) = batch.posenc;
  if (c.extra_width > 0) p.trunk_input.bottomRows(c.extra_width) = batch.extra;

  const MatrixXd* x = &p.trunk_input;
  for (int i = 0; i < model.num_trunk_layers(); ++i) {
    p.trunk_pre.push_back(Affine(model, model.trunk_layer(i), *x));
    p.trunk_out.push_back(Relu(p.trunk_pre.back()));
    x = &p.trunk_out.back();
  }
  const MatrixXd& agg = p.trunk_out.back();

  if (c.mode == OutputMode::kMask) {
    p.mixture_pre = Affine(model, model.mixture_layer(), agg);
    p.mixture = p.mixture_pre.unaryExpr(&Softplus);
  }
  const MatrixXd* ears[2] = {&batch.left, &batch.right};
  for (int e = 0; e < 2; ++e) {
    p.channel_pre[e] = Affine(model, model.channel_layer(), *ears[e]);
    p.fused[e].resize(agg.rows() + c.channel_width, n);
    p.fused[e].topRows(agg.rows()) = agg;
    p.fused[e].bottomRows(c.channel_width) = Relu(p.channel_pre[e]);
    p.diff_pre[e] = Affine(model, model.diff_layer(), p.fused[e]);
    p.channel_out[e] = c.mode == OutputMode::kMask
                           ? MatrixXd(p.diff_pre[e].array().tanh())
                           : p.diff_pre[e];
  }
  return p;
}

void Backward(const MlpModel& model, const BatchInput& batch,
              const ForwardPass& pass, const MatrixXd& d_mixture,
              const MatrixXd& d_left, const MatrixXd& d_right,
              std::span<double> grad) {
  if (grad.size() != model.num_parameters()) {
    throw DomainError("gradient buffer size mismatch");
  }
  const ModelConfig& c = model.config();
  const auto& layers = model.layers();
  const MatrixXd& agg = pass.trunk_out.back();
  MatrixXd d_agg = MatrixXd::Zero(agg.rows(), agg.cols());

  if (c.mode == OutputMode::kMask) {
    const MatrixXd dz =
        d_mixture.cwiseProduct(pass.mixture_pre.unaryExpr(&Sigmoid));
    AccumulateLayer(layers[model.mixture_layer()], dz, agg, grad);
    d_agg.noalias() += model.Weight(model.mixture_layer()).transpose() * dz;
  }

  const MatrixXd* d_out[2] = {&d_left, &d_right};
  const MatrixXd* ears[2] = {&batch.left, &batch.right};
  for (int e = 0; e < 2; ++e) {
    MatrixXd dz = *d_out[e];
    if (c.mode == OutputMode::kMask) {
      dz.array() *= 1.0 - pass.channel_out[e].array().square();
    }
    AccumulateLayer(layers[model.diff_layer()], dz, pass.fused[e], grad);
    const MatrixXd d_fused = model.Weight(model.diff_layer()).transpose() * dz;
    d_agg += d_fused.topRows(agg.rows());
    const MatrixXd dz_ch =
        ReluGrad(d_fused.bottomRows(c.channel_width), pass.channel_pre[e]);
    AccumulateLayer(layers[model.channel_layer()], dz_ch, *ears[e], grad);
  }

  MatrixXd d_x = std::move(d_agg);
  for (int i = model.num_trunk_layers() - 1; i >= 0; --i) {
    const MatrixXd dz = ReluGrad(d_x, pass.trunk_pre[i]);
    const MatrixXd& x = i == 0 ? pass.trunk_input : pass.trunk_out[i - 1];
    AccumulateLayer(layers[model.trunk_layer(i)], dz, x, grad);
    if (i == 0) {
      // Only the acoustic-encoder rows of the trunk input carry parameters.
      d_x = model.Weight(model.trunk_layer(0))
                .leftCols(c.acoustic_width)
                .transpose() *
            dz;
    } else {
      d_x = model.Weight(model.trunk_layer(i)).transpose() * dz;
    }
  }
  const MatrixXd dz_a = ReluGrad(d_x, pass.acoustic_pre);
  AccumulateLayer(layers[model.acoustic_layer()], dz_a, batch.local, grad);
}

ModelOutput Predict(const MlpModel& model, const ModelInput& input) {
  const ModelInput* ptr = &input;
  const BatchInput batch = MakeBatch(model, std::span(&ptr, 1));
  const ForwardPass pass = Forward(model, batch);
  auto to_vec = [](const MatrixXd& m) {
    return std::vector<double>(m.data(), m.data() + m.rows());
  };
  ModelOutput out;
  if (model.config().mode == OutputMode::kMask)
    out.mixture = to_vec(pass.mixture);
  out.left = to_vec(pass.channel_out[0]);
  out.right = to_vec(pass.channel_out[1]);
  return out;
}

std::vector<double> EncodeAcoustic(const MlpModel& model,
                                   std::span<const double> feature) {
  if (static_cast<int>(feature.size()) != model.config().num_directions) {
    throw DomainError("acoustic feature length mismatch");
  }
  const Eigen::Map<const Eigen::VectorXd> x(feature.data(), feature.size());
  const Eigen::VectorXd y = (model.Weight(model.acoustic_layer()) * x +
                             model.Bias(model.acoustic_layer()))
                                .cwiseMax(0.0);
  return std::vector<double>(y.data(), y.data() + y.size());
}

MaskSet BroadcastMasks(const ModelOutput& output, int num_frames) {
  const int bins = static_cast<int>(output.mixture.size());
  if (bins == 0 || output.left.size() != output.mixture.size() ||
      output.right.size() != output.mixture.size()) {
    throw DomainError("mask-mode output required");
  }
  MaskSet masks{TfArray(bins, num_frames), TfArray(bins, num_frames),
                TfArray(bins, num_frames)};
  for (int f = 0; f < bins; ++f) {
    for (int w = 0; w < num_frames; ++w) {
      masks.mixture.at(f, w) = output.mixture[f];
      masks.diff_left.at(f, w) = output.left[f];
      masks.diff_right.at(f, w) = output.right[f];
    }
  }
  return masks;
}

}  // namespace soaf
