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

#include "textaug/learn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "textaug/rng.hpp"

namespace textaug {
namespace {

using nlohmann::json;

constexpr double kProbFloor = 1e-12;

void softmax_rows_in_place(Mat* logits) {
  for (std::size_t r = 0; r < logits->rows; ++r) {
    double* row = logits->a.data() + r * logits->cols;
    double max = row[0];
    for (std::size_t c = 1; c < logits->cols; ++c) max = std::max(max, row[c]);
    double sum = 0.0;
    for (std::size_t c = 0; c < logits->cols; ++c) {
      row[c] = std::exp(row[c] - max);
      sum += row[c];
    }
    for (std::size_t c = 0; c < logits->cols; ++c) row[c] /= sum;
  }
}

// logits[r, :] += x_r W  for sparse x_r, plus bias.
void sparse_affine(const FeatureMatrix& features, const Mat& w,
                   const std::vector<double>& b, Mat* out) {
  for (std::size_t r = 0; r < features.size(); ++r) {
    double* row = out->a.data() + r * out->cols;
    std::copy(b.begin(), b.end(), row);
    for (const auto& [col, value] : features.rows[r]) {
      const double* wrow = w.a.data() + static_cast<std::size_t>(col) * w.cols;
      for (std::size_t c = 0; c < w.cols; ++c) row[c] += value * wrow[c];
    }
  }
}

std::size_t argmax_row(const double* row, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < n; ++c) {
    if (row[c] > row[best]) best = c;
  }
  return best;
}

std::size_t argmax_row(const std::vector<float>& row) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < row.size(); ++c) {
    if (row[c] > row[best]) best = c;
  }
  return best;
}

FeatureMatrix gather_rows(const FeatureMatrix& features,
                          std::span<const std::size_t> order) {
  FeatureMatrix out;
  out.cols = features.cols;
  out.rows.reserve(order.size());
  out.labels.reserve(order.size());
  for (const std::size_t i : order) {
    out.rows.push_back(features.rows[i]);
    if (!features.labels.empty()) out.labels.push_back(features.labels[i]);
  }
  return out;
}

void check_labeled(const FeatureMatrix& features, const char* where) {
  if (features.labels.size() != features.rows.size()) {
    throw ShapeMismatch(std::string(where) + ": every row needs a label row");
  }
}

}  // namespace

AdadeltaState::AdadeltaState(std::size_t size, AdadeltaConfig config)
    : config_(config), grad_sq_(size, 0.0), update_sq_(size, 0.0) {}

void AdadeltaState::step(std::span<double> params,
                         std::span<const double> grads) {
  if (params.size() != grad_sq_.size() || grads.size() != grad_sq_.size()) {
    throw ShapeMismatch("adadelta state sized for " +
                        std::to_string(grad_sq_.size()) + " parameters");
  }
  const double rho = config_.rho;
  const double eps = config_.epsilon;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    if (!std::isfinite(g)) {
      throw NonFiniteGradient("gradient component " + std::to_string(i));
    }
    grad_sq_[i] = rho * grad_sq_[i] + (1.0 - rho) * g * g;
    const double dx =
        -(std::sqrt(update_sq_[i] + eps) / std::sqrt(grad_sq_[i] + eps)) * g;
    update_sq_[i] = rho * update_sq_[i] + (1.0 - rho) * dx * dx;
    params[i] += dx;
  }
}

Mat softmax_forward(const SoftmaxModel& model, const FeatureMatrix& features) {
  if (features.cols != model.w.rows) {
    throw ShapeMismatch("features have " + std::to_string(features.cols) +
                        " columns, model expects " + std::to_string(model.w.rows));
  }
  Mat probs(features.size(), model.w.cols);
  sparse_affine(features, model.w, model.b, &probs);
  softmax_rows_in_place(&probs);
  return probs;
}

Mat mlp_forward(const MlpModel& model, const FeatureMatrix& features) {
  if (features.cols != model.w1.rows) {
    throw ShapeMismatch("features have " + std::to_string(features.cols) +
                        " columns, model expects " + std::to_string(model.w1.rows));
  }
  Mat hidden(features.size(), model.w1.cols);
  sparse_affine(features, model.w1, model.b1, &hidden);
  for (double& h : hidden.a) h = std::tanh(h);

  Mat probs(features.size(), model.w2.cols);
  for (std::size_t r = 0; r < hidden.rows; ++r) {
    double* out = probs.a.data() + r * probs.cols;
    std::copy(model.b2.begin(), model.b2.end(), out);
    const double* hrow = hidden.a.data() + r * hidden.cols;
    for (std::size_t h = 0; h < hidden.cols; ++h) {
      const double* wrow = model.w2.a.data() + h * model.w2.cols;
      for (std::size_t c = 0; c < probs.cols; ++c) out[c] += hrow[h] * wrow[c];
    }
  }
  softmax_rows_in_place(&probs);
  return probs;
}

double cross_entropy(const Mat& probs,
                     const std::vector<std::vector<float>>& targets) {
  if (probs.rows != targets.size() ||
      (probs.rows > 0 && probs.cols != targets[0].size())) {
    throw ShapeMismatch("probs " + std::to_string(probs.rows) + "x" +
                        std::to_string(probs.cols) + " vs targets " +
                        std::to_string(targets.size()));
  }
  double total = 0.0;
  for (std::size_t r = 0; r < probs.rows; ++r) {
    const double* row = probs.a.data() + r * probs.cols;
    double row_loss = 0.0;
    for (std::size_t c = 0; c < probs.cols; ++c) {
      const double y = targets[r][c];
      if (y != 0.0) {
        row_loss -= y * std::log(std::clamp(row[c], kProbFloor, 1.0));
      }
    }
    total += row_loss;
  }
  return probs.rows == 0 ? 0.0 : total / static_cast<double>(probs.rows);
}

double error_rate(const Mat& probs,
                  const std::vector<std::vector<float>>& targets) {
  if (probs.rows != targets.size()) {
    throw ShapeMismatch("probs vs targets row count");
  }
  if (probs.rows == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t r = 0; r < probs.rows; ++r) {
    const std::size_t predicted =
        argmax_row(probs.a.data() + r * probs.cols, probs.cols);
    if (predicted == argmax_row(targets[r])) ++correct;
  }
  return 1.0 - static_cast<double>(correct) / static_cast<double>(probs.rows);
}

double error_rate(const SoftmaxModel& model, const FeatureMatrix& features) {
  check_labeled(features, "error_rate");
  return error_rate(softmax_forward(model, features), features.labels);
}

double error_rate(const MlpModel& model, const FeatureMatrix& features) {
  check_labeled(features, "error_rate");
  return error_rate(mlp_forward(model, features), features.labels);
}

Mat TrainResult::predict_probs(const FeatureMatrix& features) const {
  return kind == ModelKind::kSoftmax ? softmax_forward(softmax, features)
                                     : mlp_forward(mlp, features);
}

double TrainResult::error_rate_on(const FeatureMatrix& features) const {
  check_labeled(features, "error_rate_on");
  return error_rate(predict_probs(features), features.labels);
}

void TrainLog::save_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "epoch,train_loss,train_error,val_loss,val_error\n";
  char buf[160];
  for (std::size_t e = 0; e < epochs.size(); ++e) {
    const auto& s = epochs[e];
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g\n", e + 1,
                  s.train_loss, s.train_error, s.val_loss, s.val_error);
    out << buf;
  }
}

TrainLog TrainLog::load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  TrainLog log;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    EpochStats s;
    std::size_t epoch = 0;
    if (std::sscanf(line.c_str(), "%zu,%lg,%lg,%lg,%lg", &epoch, &s.train_loss,
                    &s.train_error, &s.val_loss, &s.val_error) != 5) {
      throw IoError(path + ": bad train log line '" + line + "'");
    }
    log.epochs.push_back(s);
  }
  return log;
}

namespace {

// Flat gradient storage layout. softmax = [w | b]; mlp = [w1 | b1 | w2 | b2].
struct ParamLayout {
  std::vector<std::pair<std::size_t, std::size_t>> segments;  // (offset, size)
  std::size_t total = 0;

  void add(std::size_t size) {
    segments.emplace_back(total, size);
    total += size;
  }
};

void check_grad_span(std::size_t have, std::size_t want, const char* name) {
  if (have != want) {
    throw ShapeMismatch(std::string(name) + " gradient span has " +
                        std::to_string(have) + " entries, expected " +
                        std::to_string(want));
  }
}

}  // namespace

double softmax_backward(const SoftmaxModel& model, const FeatureMatrix& batch,
                        std::span<double> grad_w, std::span<double> grad_b) {
  check_labeled(batch, "softmax_backward");
  check_grad_span(grad_w.size(), model.w.a.size(), "w");
  check_grad_span(grad_b.size(), model.b.size(), "b");
  const Mat probs = softmax_forward(model, batch);
  const double loss = cross_entropy(probs, batch.labels);

  const std::size_t classes = model.w.cols;
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  std::fill(grad_w.begin(), grad_w.end(), 0.0);
  std::fill(grad_b.begin(), grad_b.end(), 0.0);
  std::vector<double> dlogits(classes);
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const double* prow = probs.a.data() + r * classes;
    for (std::size_t c = 0; c < classes; ++c) {
      dlogits[c] = (prow[c] - batch.labels[r][c]) * inv_n;
      grad_b[c] += dlogits[c];
    }
    for (const auto& [col, value] : batch.rows[r]) {
      double* grow = grad_w.data() + static_cast<std::size_t>(col) * classes;
      for (std::size_t c = 0; c < classes; ++c) grow[c] += value * dlogits[c];
    }
  }
  return loss;
}

double mlp_backward(const MlpModel& model, const FeatureMatrix& batch,
                    std::span<double> grad_w1, std::span<double> grad_b1,
                    std::span<double> grad_w2, std::span<double> grad_b2) {
  check_labeled(batch, "mlp_backward");
  check_grad_span(grad_w1.size(), model.w1.a.size(), "w1");
  check_grad_span(grad_b1.size(), model.b1.size(), "b1");
  check_grad_span(grad_w2.size(), model.w2.a.size(), "w2");
  check_grad_span(grad_b2.size(), model.b2.size(), "b2");
  const std::size_t hidden = model.w1.cols;
  const std::size_t classes = model.w2.cols;
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  std::fill(grad_w1.begin(), grad_w1.end(), 0.0);
  std::fill(grad_b1.begin(), grad_b1.end(), 0.0);
  std::fill(grad_w2.begin(), grad_w2.end(), 0.0);
  std::fill(grad_b2.begin(), grad_b2.end(), 0.0);

  Mat hidden_act(batch.size(), hidden);
  sparse_affine(batch, model.w1, model.b1, &hidden_act);
  for (double& h : hidden_act.a) h = std::tanh(h);

  Mat probs(batch.size(), classes);
  for (std::size_t r = 0; r < batch.size(); ++r) {
    double* out = probs.a.data() + r * classes;
    std::copy(model.b2.begin(), model.b2.end(), out);
    const double* hrow = hidden_act.a.data() + r * hidden;
    for (std::size_t h = 0; h < hidden; ++h) {
      const double* wrow = model.w2.a.data() + h * classes;
      for (std::size_t c = 0; c < classes; ++c) out[c] += hrow[h] * wrow[c];
    }
  }
  softmax_rows_in_place(&probs);
  const double loss = cross_entropy(probs, batch.labels);

  std::vector<double> dlogits(classes);
  std::vector<double> dhidden(hidden);
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const double* prow = probs.a.data() + r * classes;
    const double* hrow = hidden_act.a.data() + r * hidden;
    for (std::size_t c = 0; c < classes; ++c) {
      dlogits[c] = (prow[c] - batch.labels[r][c]) * inv_n;
      grad_b2[c] += dlogits[c];
    }
    for (std::size_t h = 0; h < hidden; ++h) {
      double* grow = grad_w2.data() + h * classes;
      double acc = 0.0;
      const double* wrow = model.w2.a.data() + h * classes;
      for (std::size_t c = 0; c < classes; ++c) {
        grow[c] += hrow[h] * dlogits[c];
        acc += wrow[c] * dlogits[c];
      }
      dhidden[h] = acc * (1.0 - hrow[h] * hrow[h]);  // tanh'
      grad_b1[h] += dhidden[h];
    }
    for (const auto& [col, value] : batch.rows[r]) {
      double* grow = grad_w1.data() + static_cast<std::size_t>(col) * hidden;
      for (std::size_t h = 0; h < hidden; ++h) grow[h] += value * dhidden[h];
    }
  }
  return loss;
}

TrainResult train(ModelKind kind, const FeatureMatrix& train_features,
                  const FeatureMatrix& val_features, const TrainOptions& options) {
  check_labeled(train_features, "train");
  check_labeled(val_features, "train (validation)");
  if (options.epochs < 1) throw InvalidConfig("epochs must be >= 1");
  if (train_features.size() == 0) throw EmptyCorpus("no training rows");
  const std::size_t classes = train_features.num_classes();
  if (classes < 2) throw ShapeMismatch("need >= 2 classes");
  if (val_features.size() > 0 && val_features.num_classes() != classes) {
    throw ShapeMismatch("validation classes differ from training");
  }

  TrainResult result;
  result.kind = kind;
  const std::size_t features = train_features.cols;

  // Zero init keeps the convex softmax problem deterministic; the MLP gets
  // scaled-uniform init from the seed.
  if (kind == ModelKind::kSoftmax) {
    result.softmax.w = Mat(features, classes);
    result.softmax.b.assign(classes, 0.0);
  } else {
    const std::size_t hidden = options.hidden;
    if (hidden < 1) throw InvalidConfig("hidden must be >= 1");
    result.mlp.w1 = Mat(features, hidden);
    result.mlp.b1.assign(hidden, 0.0);
    result.mlp.w2 = Mat(hidden, classes);
    result.mlp.b2.assign(classes, 0.0);
    RngStream init_rng = RngStream::derive(options.seed, 0x1417);
    auto init = [&](Mat* m) {
      const double bound = std::sqrt(6.0 / static_cast<double>(m->rows + m->cols));
      for (double& x : m->a) x = (2.0 * init_rng.next_double() - 1.0) * bound;
    };
    init(&result.mlp.w1);
    init(&result.mlp.w2);
  }

  ParamLayout layout;
  if (kind == ModelKind::kSoftmax) {
    layout.add(result.softmax.w.a.size());
    layout.add(result.softmax.b.size());
  } else {
    layout.add(result.mlp.w1.a.size());
    layout.add(result.mlp.b1.size());
    layout.add(result.mlp.w2.a.size());
    layout.add(result.mlp.b2.size());
  }
  std::vector<double> grads(layout.total, 0.0);

  auto param_span = [&](std::size_t segment) -> std::span<double> {
    if (kind == ModelKind::kSoftmax) {
      return segment == 0 ? std::span<double>(result.softmax.w.a)
                          : std::span<double>(result.softmax.b);
    }
    switch (segment) {
      case 0: return result.mlp.w1.a;
      case 1: return result.mlp.b1;
      case 2: return result.mlp.w2.a;
      default: return result.mlp.b2;
    }
  };
  auto grad_span = [&](std::size_t segment) {
    const auto [offset, size] = layout.segments[segment];
    return std::span<double>(grads.data() + offset, size);
  };

  // One optimizer state per parameter segment, stepping model storage in
  // place.
  std::vector<AdadeltaState> states;
  for (const auto& [offset, size] : layout.segments) {
    (void)offset;
    states.emplace_back(size, options.adadelta);
  }

  const std::size_t n = train_features.size();
  const std::size_t batch_size = std::max<std::size_t>(1, options.batch_size);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    RngStream shuffle_rng = RngStream::derive(options.seed, 0xE70C + epoch);
    shuffle_rng.shuffle(order);

    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < n; start += batch_size, ++batch_index) {
      const std::size_t end = std::min(n, start + batch_size);
      FeatureMatrix batch = gather_rows(
          train_features, std::span<const std::size_t>(order.data() + start,
                                                       end - start));
      if (options.mixup.has_value() && batch.size() >= 2) {
        MixupConfig cfg = *options.mixup;
        cfg.seed = RngStream::derive(cfg.seed, (epoch << 20) ^ batch_index)
                       .next_u64();
        batch = mixup_batch(batch, cfg);
      }

      double batch_loss = 0.0;
      if (kind == ModelKind::kSoftmax) {
        batch_loss = softmax_backward(result.softmax, batch, grad_span(0),
                                      grad_span(1));
      } else {
        batch_loss = mlp_backward(result.mlp, batch, grad_span(0), grad_span(1),
                                  grad_span(2), grad_span(3));
      }
      if (!std::isfinite(batch_loss)) {
        throw DivergedLoss("loss became non-finite at epoch " +
                           std::to_string(epoch + 1));
      }
      for (std::size_t s = 0; s < states.size(); ++s) {
        states[s].step(param_span(s), grad_span(s));
      }
    }

    EpochStats stats;
    {
      const Mat probs = result.predict_probs(train_features);
      stats.train_loss = cross_entropy(probs, train_features.labels);
      stats.train_error = error_rate(probs, train_features.labels);
    }
    if (val_features.size() > 0) {
      const Mat probs = result.predict_probs(val_features);
      stats.val_loss = cross_entropy(probs, val_features.labels);
      stats.val_error = error_rate(probs, val_features.labels);
    }
    if (!std::isfinite(stats.train_loss)) {
      throw DivergedLoss("train loss became non-finite at epoch " +
                         std::to_string(epoch + 1));
    }
    result.log.epochs.push_back(stats);
  }
  return result;
}

namespace {

json mat_to_json(const Mat& m) {
  return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.a}};
}

Mat mat_from_json(const json& j) {
  Mat m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  m.a = j.at("data").get<std::vector<double>>();
  if (m.a.size() != m.rows * m.cols) {
    throw IoError("matrix data does not match its shape");
  }
  return m;
}

}  // namespace

void model_save_json(const TrainResult& model, const std::string& path) {
  json j;
  if (model.kind == ModelKind::kSoftmax) {
    j["kind"] = "softmax";
    j["w"] = mat_to_json(model.softmax.w);
    j["b"] = model.softmax.b;
  } else {
    j["kind"] = "mlp";
    j["w1"] = mat_to_json(model.mlp.w1);
    j["b1"] = model.mlp.b1;
    j["w2"] = mat_to_json(model.mlp.w2);
    j["b2"] = model.mlp.b2;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump() << "\n";
}

TrainResult model_load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  json j;
  in >> j;
  TrainResult model;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "softmax") {
    model.kind = ModelKind::kSoftmax;
    model.softmax.w = mat_from_json(j.at("w"));
    model.softmax.b = j.at("b").get<std::vector<double>>();
  } else if (kind == "mlp") {
    model.kind = ModelKind::kMlp;
    model.mlp.w1 = mat_from_json(j.at("w1"));
    model.mlp.b1 = j.at("b1").get<std::vector<double>>();
    model.mlp.w2 = mat_from_json(j.at("w2"));
    model.mlp.b2 = j.at("b2").get<std::vector<double>>();
  } else {
    throw IoError(path + ": unknown model kind '" + kind + "'");
  }
  return model;
}

}  // namespace textaug
