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

#include "soaf/train.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "soaf/error.h"
#include "soaf/loss.h"

namespace soaf {
namespace {

using Eigen::MatrixXd;

std::vector<const ModelInput*> Inputs(const Dataset& dataset,
                                      std::span<const size_t> indices) {
  std::vector<const ModelInput*> out;
  out.reserve(indices.size());
  for (size_t i : indices) out.push_back(&dataset.samples.at(i).input);
  return out;
}

StereoSignal ToStereo(const ModelOutput& out) { return {out.left, out.right}; }

}  // namespace

void ValidateTrainConfig(const TrainConfig& config) {
  if (!(config.lr_start > 0.0 && config.lr_end > 0.0)) {
    throw ValidationError("learning rates must be > 0");
  }
  if (config.lr_end > config.lr_start) {
    throw ValidationError("lr_end must be <= lr_start");
  }
  if (config.epochs < 1) throw ValidationError("epochs must be >= 1");
  if (config.batch_size < 1) throw ValidationError("batch_size must be >= 1");
  if (!(config.beta1 >= 0.0 && config.beta1 < 1.0 && config.beta2 >= 0.0 &&
        config.beta2 < 1.0)) {
    throw ValidationError("Adam betas must be in [0, 1)");
  }
  if (!(config.adam_epsilon > 0.0))
    throw ValidationError("adam_epsilon must be > 0");
}

double LearningRate(const TrainConfig& config, int epoch) {
  if (config.epochs == 1) return config.lr_start;
  const double t = static_cast<double>(epoch) / (config.epochs - 1);
  if (epoch == config.epochs - 1) return config.lr_end;
  return config.lr_start * std::pow(config.lr_end / config.lr_start, t);
}

Adam::Adam(size_t num_parameters, const TrainConfig& config)
    : beta1_(config.beta1),
      beta2_(config.beta2),
      epsilon_(config.adam_epsilon),
      m_(num_parameters, 0.0),
      v_(num_parameters, 0.0) {}

void Adam::Step(std::span<double> params, std::span<const double> grad,
                double lr) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw DomainError("Adam parameter count mismatch");
  }
  ++steps_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  for (size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    params[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + epsilon_);
  }
}

double BatchLoss(const MlpModel& model, const Dataset& dataset,
                 std::span<const size_t> indices, std::span<double> grad) {
  if (indices.empty()) return 0.0;
  const std::vector<const ModelInput*> inputs = Inputs(dataset, indices);
  const BatchInput batch = MakeBatch(model, inputs);
  const ForwardPass pass = Forward(model, batch);
  const int n = batch.size();
  const bool want_grad = !grad.empty();
  const int width = model.config().output_width();

  MatrixXd d_mix, d_left(width, n), d_right(width, n);
  double loss = 0.0;
  if (model.config().mode == OutputMode::kMask) {
    d_mix.resize(width, n);
    for (int j = 0; j < n; ++j) {
      const Sample& s = dataset.samples[indices[j]];
      std::span<double> dm, dl, dr;
      if (want_grad) {
        dm = {d_mix.col(j).data(), static_cast<size_t>(width)};
        dl = {d_left.col(j).data(), static_cast<size_t>(width)};
        dr = {d_right.col(j).data(), static_cast<size_t>(width)};
      }
      loss += MaskLoss(s.stats, {pass.mixture.col(j).data(), size_t(width)},
                       {pass.channel_out[0].col(j).data(), size_t(width)},
                       {pass.channel_out[1].col(j).data(), size_t(width)}, dm,
                       dl, dr);
    }
  } else {
    for (int j = 0; j < n; ++j) {
      const Sample& s = dataset.samples[indices[j]];
      std::span<double> dl, dr;
      if (want_grad) {
        dl = {d_left.col(j).data(), static_cast<size_t>(width)};
        dr = {d_right.col(j).data(), static_cast<size_t>(width)};
      }
      loss +=
          StftMagnitudeLoss({pass.channel_out[0].col(j).data(), size_t(width)},
                            s.rir_magnitude_left, dataset.config.stft, dl);
      loss +=
          StftMagnitudeLoss({pass.channel_out[1].col(j).data(), size_t(width)},
                            s.rir_magnitude_right, dataset.config.stft, dr);
    }
  }
  if (want_grad) Backward(model, batch, pass, d_mix, d_left, d_right, grad);
  return loss;
}

std::vector<EpochStats> Train(
    MlpModel& model, const Dataset& dataset, std::span<const size_t> indices,
    const TrainConfig& config,
    const std::function<void(const EpochStats&)>& on_epoch) {
  ValidateTrainConfig(config);
  if (indices.empty()) throw DomainError("empty training set");
  std::vector<size_t> order(indices.begin(), indices.end());
  std::mt19937_64 rng(config.seed);
  Adam adam(model.num_parameters(), config);
  std::vector<double> grad(model.num_parameters());
  std::vector<EpochStats> trace;
  trace.reserve(config.epochs);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    const double lr = LearningRate(config, epoch);
    double epoch_loss = 0.0;
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t stop = std::min(order.size(), start + config.batch_size);
      const std::span<const size_t> batch(order.data() + start, stop - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      const double loss = BatchLoss(model, dataset, batch, grad);
      if (!std::isfinite(loss)) {
        throw DivergenceError("non-finite loss at epoch " +
                              std::to_string(epoch + 1) +
                              ", batch starting at " + std::to_string(start));
      }
      epoch_loss += loss;
      const double scale = 1.0 / static_cast<double>(batch.size());
      for (double& g : grad) g *= scale;
      adam.Step(model.parameters(), grad, lr);
    }
    trace.push_back({epoch + 1, lr, epoch_loss / order.size()});
    if (on_epoch) on_epoch(trace.back());
  }
  return trace;
}

std::string LossTraceCsv(std::span<const EpochStats> trace) {
  std::ostringstream out;
  out.precision(17);
  out << "epoch,lr,mean_loss\n";
  for (const auto& e : trace) {
    out << e.epoch << ',' << e.lr << ',' << e.mean_loss << '\n';
  }
  return out.str();
}

Prediction PredictSample(const MlpModel& model, const Dataset& dataset,
                         const Sample& sample) {
  const ModelOutput out = Predict(model, sample.input);
  Prediction p;
  if (model.config().mode == OutputMode::kMask) {
    const MaskSet masks = BroadcastMasks(out, dataset.num_frames());
    p.magnitudes = MaskedMagnitudes(dataset.source_magnitude, masks);
    p.audio = ApplyMasks(dataset.source_magnitude, dataset.source_phase, masks,
                         dataset.config.stft, dataset.source.size());
  } else {
    p.audio = ToStereo(out);
    p.magnitudes.left = Magnitude(Stft(p.audio.left, dataset.config.stft));
    p.magnitudes.right = Magnitude(Stft(p.audio.right, dataset.config.stft));
  }
  return p;
}

MetricReport EvaluateSample(const MlpModel& model, const Dataset& dataset,
                            const Sample& sample) {
  if (model.config().mode != dataset.config.mode) {
    throw DomainError("model and dataset output modes differ");
  }
  const Prediction p = PredictSample(model, dataset, sample);
  if (dataset.config.mode == OutputMode::kMask) {
    return CompareAudio(p.magnitudes, sample.target, p.audio,
                        sample.target_audio);
  }
  MetricReport r = CompareRirs(p.audio, sample.target_rir, dataset.sample_rate);
  r.mag = MagDistance(p.magnitudes.left, sample.rir_magnitude_left) +
          MagDistance(p.magnitudes.right, sample.rir_magnitude_right);
  return r;
}

std::vector<NamedReport> Evaluate(const MlpModel& model, const Dataset& dataset,
                                  std::span<const size_t> indices) {
  std::vector<NamedReport> out;
  out.reserve(indices.size());
  for (size_t i : indices) {
    out.emplace_back("sample_" + std::to_string(i),
                     EvaluateSample(model, dataset, dataset.samples.at(i)));
  }
  return out;
}

}  // namespace soaf
