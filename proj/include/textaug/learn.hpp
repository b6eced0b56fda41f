// Copyright 2026 The textaug Authors
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
//
// Multiclass softmax regression and a one-hidden-layer tanh MLP, trained
// with ADADELTA on categorical cross-entropy. Training is single-threaded
// and bit-deterministic for a fixed seed. The reported metric is
// error = 1 - accuracy.

#ifndef TEXTAUG_LEARN_HPP_
#define TEXTAUG_LEARN_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "textaug/errors.hpp"
#include "textaug/vectorize.hpp"

namespace textaug {

// Dense row-major matrix of doubles; all model parameters live in these.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

struct SoftmaxModel {
  Mat w;                  // features x classes
  std::vector<double> b;  // classes
};

struct MlpModel {
  Mat w1;                  // features x hidden
  std::vector<double> b1;  // hidden
  Mat w2;                  // hidden x classes
  std::vector<double> b2;  // classes
};

enum class ModelKind { kSoftmax, kMlp };

struct AdadeltaConfig {
  double rho = 0.95;
  double epsilon = 1e-6;
};

// Per-parameter decayed accumulators of squared gradients and squared
// updates. One state instance drives one flat parameter vector.
class AdadeltaState {
 public:
  AdadeltaState(std::size_t size, AdadeltaConfig config = {});

  // E[g^2] <- rho E[g^2] + (1-rho) g^2
  // dx     = -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
  // E[dx^2]<- rho E[dx^2] + (1-rho) dx^2
  // param  += dx
  // Throws NonFiniteGradient on non-finite gradients.
  void step(std::span<double> params, std::span<const double> grads);

  const std::vector<double>& grad_sq() const { return grad_sq_; }
  const std::vector<double>& update_sq() const { return update_sq_; }

 private:
  AdadeltaConfig config_;
  std::vector<double> grad_sq_;
  std::vector<double> update_sq_;
};

struct EpochStats {
  double train_loss = 0.0;
  double train_error = 0.0;
  double val_loss = 0.0;
  double val_error = 0.0;
};

struct TrainLog {
  std::vector<EpochStats> epochs;

  // CSV with header epoch,train_loss,train_error,val_loss,val_error.
  void save_csv(const std::string& path) const;
  static TrainLog load_csv(const std::string& path);
};

struct TrainOptions {
  std::size_t epochs = 10;
  std::size_t batch_size = 128;
  std::size_t hidden = 64;  // MLP only
  std::optional<MixupConfig> mixup;
  std::uint64_t seed = 0;
  AdadeltaConfig adadelta;
};

// Row-wise class probabilities; rows sum to 1 within 1e-6. Logits are
// max-subtracted before exponentiation. Throws ShapeMismatch.
Mat softmax_forward(const SoftmaxModel& model, const FeatureMatrix& features);
Mat mlp_forward(const MlpModel& model, const FeatureMatrix& features);

// -mean over rows of sum_c y_c ln(p_c), p clamped to [1e-12, 1].
double cross_entropy(const Mat& probs,
                     const std::vector<std::vector<float>>& targets);

// Mean batch loss plus analytic gradients of cross-entropy over softmax.
// Gradient spans must match the parameter sizes (checked). These back the
// training loop and the finite-difference verification.
double softmax_backward(const SoftmaxModel& model, const FeatureMatrix& batch,
                        std::span<double> grad_w, std::span<double> grad_b);
double mlp_backward(const MlpModel& model, const FeatureMatrix& batch,
                    std::span<double> grad_w1, std::span<double> grad_b1,
                    std::span<double> grad_w2, std::span<double> grad_b2);

// 1 - accuracy; argmax ties resolve to the lowest class index.
double error_rate(const Mat& probs,
                  const std::vector<std::vector<float>>& targets);

struct TrainResult {
  ModelKind kind = ModelKind::kSoftmax;
  SoftmaxModel softmax;
  MlpModel mlp;
  TrainLog log;

  Mat predict_probs(const FeatureMatrix& features) const;
  double error_rate_on(const FeatureMatrix& features) const;
};

// Mini-batch ADADELTA training. When options.mixup is set, every epoch's
// training batches are mixup-transformed before the gradient step; the
// logged train metrics are evaluated on the raw (unmixed) training set at
// epoch end. Throws DivergedLoss when the loss goes non-finite.
TrainResult train(ModelKind kind, const FeatureMatrix& train_features,
                  const FeatureMatrix& val_features, const TrainOptions& options);

double error_rate(const SoftmaxModel& model, const FeatureMatrix& features);
double error_rate(const MlpModel& model, const FeatureMatrix& features);

// JSON persistence: {kind, shapes, flattened row-major weights}.
void model_save_json(const TrainResult& model, const std::string& path);
TrainResult model_load_json(const std::string& path);

}  // namespace textaug

#endif  // TEXTAUG_LEARN_HPP_
