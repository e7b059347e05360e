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

#ifndef SOAF_TRAIN_H_
#define SOAF_TRAIN_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "soaf/dataset.h"
#include "soaf/metrics.h"
#include "soaf/model.h"

namespace soaf {

struct TrainConfig {
  double lr_start = 5e-4;
  double lr_end = 5e-6;
  int epochs = 200;
  int batch_size = 32;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::uint64_t seed = 0;  // minibatch order
};

void ValidateTrainConfig(const TrainConfig& config);

// lr_start * (lr_end / lr_start)^(epoch / (epochs - 1)) for 0-based epochs,
// so the last epoch runs at exactly lr_end.
double LearningRate(const TrainConfig& config, int epoch);

class Adam {
 public:
  Adam(size_t num_parameters, const TrainConfig& config);

  void Step(std::span<double> params, std::span<const double> grad, double lr);
  long steps() const { return steps_; }

 private:
  double beta1_, beta2_, epsilon_;
  std::vector<double> m_, v_;
  long steps_ = 0;
};

// Sum of per-sample losses over `indices`; adds the summed gradient to
// `grad` unless it is empty. Mask mode uses the mask loss, RIR mode the STFT
// magnitude loss of both channels.
double BatchLoss(const MlpModel& model, const Dataset& dataset,
                 std::span<const size_t> indices, std::span<double> grad);

struct EpochStats {
  int epoch = 0;  // 1-based
  double lr = 0.0;
  double mean_loss = 0.0;  // mean per-sample loss over the epoch's batches
};

// Minibatch Adam over the given sample indices with a seeded per-epoch
// shuffle. Throws DivergenceError when a batch loss is not finite.
std::vector<EpochStats> Train(
    MlpModel& model, const Dataset& dataset, std::span<const size_t> indices,
    const TrainConfig& config,
    const std::function<void(const EpochStats&)>& on_epoch = {});

// "epoch,lr,mean_loss" header plus one row per epoch.
std::string LossTraceCsv(std::span<const EpochStats> trace);

// Mask mode: predicted magnitudes and audio rendered with the source phase.
// RIR mode: predicted responses in `audio`, their magnitudes in `magnitudes`
// (mixture empty).
struct Prediction {
  BinauralMagnitudes magnitudes;
  StereoSignal audio;
};

Prediction PredictSample(const MlpModel& model, const Dataset& dataset,
                         const Sample& sample);

// Mask mode: MAG, mixture MAG, ENV and LRE against the sample targets.
// RIR mode: MAG on RIR magnitudes plus T60, C50, EDT and LRE.
MetricReport EvaluateSample(const MlpModel& model, const Dataset& dataset,
                            const Sample& sample);

// Clip ids are "sample_<index>".
std::vector<NamedReport> Evaluate(const MlpModel& model, const Dataset& dataset,
                                  std::span<const size_t> indices);

}  // namespace soaf

#endif  // SOAF_TRAIN_H_
