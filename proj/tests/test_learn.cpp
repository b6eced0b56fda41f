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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "textaug/rng.hpp"

using namespace textaug;
using testing::TempDir;

namespace {

FeatureMatrix dense_features(const std::vector<std::vector<float>>& rows,
                             const std::vector<int>& labels,
                             std::size_t classes) {
  FeatureMatrix m = dense_to_matrix(rows);
  attach_one_hot(&m, labels, classes);
  return m;
}

// Two well-separated Gaussian blobs; separability is certified by the
// perceptron oracle before any training assertion uses them.
struct Blobs {
  FeatureMatrix features;
  std::vector<std::vector<double>> raw;
  std::vector<int> labels;

  explicit Blobs(std::uint64_t seed, std::size_t n = 200, std::size_t dim = 5) {
    RngStream rng(seed);
    std::vector<std::vector<float>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      const int label = static_cast<int>(i % 2);
      const double center = label == 0 ? -2.5 : 2.5;
      std::vector<float> row(dim);
      std::vector<double> raw_row(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        raw_row[d] = center + 0.7 * rng.next_normal();
        row[d] = static_cast<float>(raw_row[d]);
      }
      rows.push_back(std::move(row));
      raw.push_back(std::move(raw_row));
      labels.push_back(label);
    }
    features = dense_features(rows, labels, 2);
  }
};

}  // namespace

TEST_SUITE("learn") {

TEST_CASE("softmax_forward is uniform at zero parameters") {
  SoftmaxModel model;
  model.w = Mat(4, 3);
  model.b.assign(3, 0.0);
  FeatureMatrix m = dense_features({{1, 0, 0, 0}, {0, 2, -1, 3}}, {0, 1}, 3);
  const Mat probs = softmax_forward(model, m);
  for (std::size_t r = 0; r < probs.rows; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(probs.at(r, c) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("softmax_forward saturates with a dominant bias") {
  SoftmaxModel model;
  model.w = Mat(2, 3);
  model.b = {50.0, -50.0, -50.0};
  FeatureMatrix m = dense_features({{0.1f, 0.2f}}, {0}, 3);
  const Mat probs = softmax_forward(model, m);
  CHECK(probs.at(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("softmax_forward matches a direct formula evaluation") {
  RngStream rng(42);
  SoftmaxModel model;
  model.w = Mat(3, 4);
  for (double& x : model.w.a) x = rng.next_normal();
  model.b.assign(4, 0.0);
  for (double& x : model.b) x = rng.next_normal();

  std::vector<std::vector<float>> rows;
  for (int r = 0; r < 5; ++r) {
    std::vector<float> row(3);
    for (auto& x : row) x = static_cast<float>(rng.next_normal());
    rows.push_back(row);
  }
  FeatureMatrix m = dense_features(rows, {0, 1, 2, 3, 0}, 4);
  const Mat probs = softmax_forward(model, m);

  for (std::size_t r = 0; r < 5; ++r) {
    // Direct exp/sum evaluation without the max-subtraction trick.
    std::vector<double> logits(4);
    for (std::size_t c = 0; c < 4; ++c) {
      logits[c] = model.b[c];
      for (std::size_t f = 0; f < 3; ++f) {
        logits[c] += rows[r][f] * model.w.at(f, c);
      }
    }
    double denom = 0.0;
    for (const double l : logits) denom += std::exp(l);
    double row_sum = 0.0;
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(probs.at(r, c) ==
            doctest::Approx(std::exp(logits[c]) / denom).epsilon(1e-9));
      row_sum += probs.at(r, c);
    }
    CHECK(row_sum == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("cross_entropy analytic values") {
  Mat perfect(1, 3);
  perfect.at(0, 0) = 1.0;
  CHECK(cross_entropy(perfect, {{1, 0, 0}}) <= 1e-9);

  Mat uniform(1, 4);
  for (std::size_t c = 0; c < 4; ++c) uniform.at(0, c) = 0.25;
  CHECK(cross_entropy(uniform, {{0, 0, 1, 0}}) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));

  Mat half(1, 2);
  half.at(0, 0) = half.at(0, 1) = 0.5;
  CHECK(cross_entropy(half, {{0.5, 0.5}}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(cross_entropy(half, {{1, 0, 0}}), ShapeMismatch);
}

TEST_CASE("adadelta zero gradient is the identity") {
  AdadeltaState state(3);
  std::vector<double> params{1.0, -2.0, 0.5};
  const std::vector<double> before = params;
  state.step(params, std::vector<double>{0.0, 0.0, 0.0});
  CHECK(params == before);
  CHECK(state.grad_sq() == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(state.update_sq() == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("adadelta first step matches the hand-derived value") {
  AdadeltaState state(1, AdadeltaConfig{0.95, 1e-6});
  std::vector<double> params{0.0};
  state.step(params, std::vector<double>{1.0});
  // dx = -sqrt(eps) / sqrt((1 - rho) + eps) at g = 1.
  const double expected = -std::sqrt(1e-6) / std::sqrt(0.05 + 1e-6);
  CHECK(params[0] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(params[0] - (-0.004472)) < 1e-6);
}

TEST_CASE("adadelta matches the reference recurrence over many steps") {
  AdadeltaState state(1, AdadeltaConfig{0.95, 1e-6});
  testing::RefAdadelta ref;
  std::vector<double> params{0.0};
  double ref_param = 0.0;
  RngStream rng(8);
  for (int step = 0; step < 200; ++step) {
    const double g = step < 100 ? 1.0 : rng.next_normal();
    state.step(params, std::vector<double>{g});
    ref_param += ref.step(g);
    REQUIRE(params[0] == doctest::Approx(ref_param).epsilon(1e-12));
  }
}

TEST_CASE("adadelta rejects non-finite gradients and bad shapes") {
  AdadeltaState state(2);
  std::vector<double> params{0.0, 0.0};
  CHECK_THROWS_AS(
      state.step(params, std::vector<double>{1.0, std::nan("")}),
      NonFiniteGradient);
  std::vector<double> wrong{0.0};
  CHECK_THROWS_AS(state.step(wrong, std::vector<double>{1.0}), ShapeMismatch);
}

namespace {

double finite_difference_check(std::size_t features, std::size_t classes,
                               std::size_t rows, std::uint64_t seed,
                               bool mlp_kind) {
  RngStream rng(seed);
  std::vector<std::vector<float>> data;
  std::vector<int> labels;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<float> row(features);
    for (auto& x : row) x = static_cast<float>(rng.next_normal());
    data.push_back(row);
    labels.push_back(static_cast<int>(rng.below(classes)));
  }
  FeatureMatrix batch = dense_features(data, labels, classes);

  double worst = 0.0;
  const double h = 1e-6;
  if (!mlp_kind) {
    SoftmaxModel model;
    model.w = Mat(features, classes);
    for (double& x : model.w.a) x = 0.5 * rng.next_normal();
    model.b.assign(classes, 0.0);
    for (double& x : model.b) x = 0.5 * rng.next_normal();

    std::vector<double> grad_w(model.w.a.size()), grad_b(model.b.size());
    softmax_backward(model, batch, grad_w, grad_b);

    auto loss_at = [&]() {
      return cross_entropy(softmax_forward(model, batch), batch.labels);
    };
    auto probe = [&](double* param, double analytic) {
      const double keep = *param;
      *param = keep + h;
      const double up = loss_at();
      *param = keep - h;
      const double down = loss_at();
      *param = keep;
      const double numeric = (up - down) / (2.0 * h);
      const double scale = std::max({1e-4, std::abs(numeric), std::abs(analytic)});
      worst = std::max(worst, std::abs(numeric - analytic) / scale);
    };
    for (std::size_t i = 0; i < model.w.a.size(); ++i) {
      probe(&model.w.a[i], grad_w[i]);
    }
    for (std::size_t i = 0; i < model.b.size(); ++i) {
      probe(&model.b[i], grad_b[i]);
    }
  } else {
    const std::size_t hidden = 4;
    MlpModel model;
    model.w1 = Mat(features, hidden);
    model.b1.assign(hidden, 0.0);
    model.w2 = Mat(hidden, classes);
    model.b2.assign(classes, 0.0);
    for (double& x : model.w1.a) x = 0.5 * rng.next_normal();
    for (double& x : model.b1) x = 0.2 * rng.next_normal();
    for (double& x : model.w2.a) x = 0.5 * rng.next_normal();
    for (double& x : model.b2) x = 0.2 * rng.next_normal();

    std::vector<double> g1(model.w1.a.size()), g2(model.b1.size()),
        g3(model.w2.a.size()), g4(model.b2.size());
    mlp_backward(model, batch, g1, g2, g3, g4);

    auto loss_at = [&]() {
      return cross_entropy(mlp_forward(model, batch), batch.labels);
    };
    auto probe = [&](double* param, double analytic) {
      const double keep = *param;
      *param = keep + h;
      const double up = loss_at();
      *param = keep - h;
      const double down = loss_at();
      *param = keep;
      const double numeric = (up - down) / (2.0 * h);
      const double scale = std::max({1e-4, std::abs(numeric), std::abs(analytic)});
      worst = std::max(worst, std::abs(numeric - analytic) / scale);
    };
    for (std::size_t i = 0; i < model.w1.a.size(); ++i) probe(&model.w1.a[i], g1[i]);
    for (std::size_t i = 0; i < model.b1.size(); ++i) probe(&model.b1[i], g2[i]);
    for (std::size_t i = 0; i < model.w2.a.size(); ++i) probe(&model.w2.a[i], g3[i]);
    for (std::size_t i = 0; i < model.b2.size(); ++i) probe(&model.b2[i], g4[i]);
  }
  return worst;
}

}  // namespace

TEST_CASE("analytic gradients match central finite differences") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CHECK(finite_difference_check(5, 3, 10, seed, false) < 1e-4);
    CHECK(finite_difference_check(5, 3, 10, seed + 100, true) < 1e-4);
  }
}

TEST_CASE("training separates Gaussian blobs") {
  const Blobs blobs(6);
  REQUIRE(testing::perceptron_separable(blobs.raw, blobs.labels));

  TrainOptions options;
  options.epochs = 200;
  options.batch_size = 32;
  options.seed = 3;
  const TrainResult result =
      train(ModelKind::kSoftmax, blobs.features, blobs.features, options);
  CHECK(result.log.epochs.size() == 200);
  CHECK(result.log.epochs.back().train_error <= 0.02);
}

TEST_CASE("train writes one log entry per epoch and is seed-deterministic") {
  const Blobs blobs(9, 60, 3);
  TrainOptions options;
  options.epochs = 1;
  options.seed = 5;
  const TrainResult one =
      train(ModelKind::kSoftmax, blobs.features, blobs.features, options);
  CHECK(one.log.epochs.size() == 1);

  options.epochs = 7;
  options.mixup = MixupConfig{0.2, 11, false};
  TempDir tmp("log");
  const TrainResult a =
      train(ModelKind::kMlp, blobs.features, blobs.features, options);
  const TrainResult b =
      train(ModelKind::kMlp, blobs.features, blobs.features, options);
  a.log.save_csv(tmp.file("a.csv"));
  b.log.save_csv(tmp.file("b.csv"));
  CHECK(testing::read_file(tmp.file("a.csv")) ==
        testing::read_file(tmp.file("b.csv")));

  const TrainLog reloaded = TrainLog::load_csv(tmp.file("a.csv"));
  REQUIRE(reloaded.epochs.size() == a.log.epochs.size());
  for (std::size_t e = 0; e < reloaded.epochs.size(); ++e) {
    CHECK(reloaded.epochs[e].val_loss == a.log.epochs[e].val_loss);
  }
}

TEST_CASE("training detects divergence from non-finite features") {
  FeatureMatrix m = dense_features(
      {{std::numeric_limits<float>::infinity(), 1.0f}, {0.0f, 1.0f}}, {0, 1},
      2);
  TrainOptions options;
  options.epochs = 1;
  CHECK_THROWS_AS(train(ModelKind::kSoftmax, m, m, options), DivergedLoss);
}

TEST_CASE("error_rate identities") {
  // Zero model on balanced 4-class data: argmax ties resolve to class 0,
  // so accuracy is the share of class-0 rows.
  RngStream rng(12);
  std::vector<std::vector<float>> rows;
  std::vector<int> labels;
  std::size_t zeros = 0;
  for (int i = 0; i < 10000; ++i) {
    rows.push_back({static_cast<float>(rng.next_normal()),
                    static_cast<float>(rng.next_normal())});
    const int label = static_cast<int>(rng.below(4));
    labels.push_back(label);
    zeros += label == 0 ? 1 : 0;
  }
  FeatureMatrix m = dense_features(rows, labels, 4);
  SoftmaxModel model;
  model.w = Mat(2, 4);
  model.b.assign(4, 0.0);
  const double err = error_rate(model, m);
  CHECK(err == doctest::Approx(1.0 - zeros / 10000.0).epsilon(1e-12));
  CHECK(std::abs(err - 0.75) < 0.02);
  CHECK(err >= 0.0);
  CHECK(err <= 1.0);

  // Fully correct predictor.
  SoftmaxModel exact;
  exact.w = Mat(2, 2);
  exact.w.at(0, 0) = 10.0;
  exact.w.at(1, 1) = 10.0;
  exact.b.assign(2, 0.0);
  FeatureMatrix easy = dense_features({{1, 0}, {0, 1}}, {0, 1}, 2);
  CHECK(error_rate(exact, easy) == 0.0);
}

TEST_CASE("model persistence round-trips bit-exactly") {
  const Blobs blobs(21, 40, 4);
  TrainOptions options;
  options.epochs = 3;
  options.hidden = 6;
  options.seed = 4;
  TempDir tmp("model");
  for (const ModelKind kind : {ModelKind::kSoftmax, ModelKind::kMlp}) {
    const TrainResult trained =
        train(kind, blobs.features, blobs.features, options);
    model_save_json(trained, tmp.file("m.json"));
    const TrainResult back = model_load_json(tmp.file("m.json"));
    REQUIRE(back.kind == kind);
    if (kind == ModelKind::kSoftmax) {
      CHECK(back.softmax.w.a == trained.softmax.w.a);
      CHECK(back.softmax.b == trained.softmax.b);
    } else {
      CHECK(back.mlp.w1.a == trained.mlp.w1.a);
      CHECK(back.mlp.b2 == trained.mlp.b2);
    }
    CHECK(back.error_rate_on(blobs.features) ==
          trained.error_rate_on(blobs.features));
  }
}

TEST_CASE("mixup training keeps soft-label losses finite") {
  const Blobs blobs(33, 80, 2);
  TrainOptions options;
  options.epochs = 10;
  options.seed = 2;
  options.mixup = MixupConfig{0.2, 9, false};
  const TrainResult result =
      train(ModelKind::kSoftmax, blobs.features, blobs.features, options);
  for (const auto& epoch : result.log.epochs) {
    CHECK(std::isfinite(epoch.train_loss));
    CHECK(std::isfinite(epoch.val_loss));
  }
}

}  // TEST_SUITE
