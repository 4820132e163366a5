#include <cmath>
#include <random>

#include "doctest.h"
#include "hsc/mlp.hpp"

using namespace hsc;

TEST_CASE("forward pass matches a hand-computed 1-2-1 network") {
  MlpModel m;
  m.layer_sizes = {1, 2, 1};
  m.weights = {Eigen::MatrixXd(2, 1), Eigen::MatrixXd(1, 2)};
  m.biases = {Eigen::VectorXd(2), Eigen::VectorXd(1)};
  m.weights[0] << 0.5, -1.0;
  m.biases[0] << 0.1, 0.2;
  m.weights[1] << 2.0, 3.0;
  m.biases[1] << -0.4;
  m.scaler.lo = Eigen::VectorXd::Constant(1, -1.0);
  m.scaler.hi = Eigen::VectorXd::Constant(1, 1.0);

  const double x = 0.3;  // scaler maps [-1,1] onto itself
  const double h1 = std::tanh(0.5 * x + 0.1);
  const double h2 = std::tanh(-1.0 * x + 0.2);
  const double expected = 2.0 * h1 + 3.0 * h2 - 0.4;
  CHECK(predict_mlp(m, Eigen::VectorXd::Constant(1, x)) ==
        doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("zero-weight network returns the output bias") {
  MlpModel m;
  m.layer_sizes = {3, 4, 1};
  m.weights = {Eigen::MatrixXd::Zero(4, 3), Eigen::MatrixXd::Zero(1, 4)};
  m.biases = {Eigen::VectorXd::Zero(4), Eigen::VectorXd::Constant(1, 0.77)};
  m.scaler.lo = Eigen::VectorXd::Constant(3, 0.0);
  m.scaler.hi = Eigen::VectorXd::Constant(3, 1.0);
  Eigen::VectorXd f(3);
  f << 0.3, 0.6, 0.9;
  CHECK(predict_mlp(m, f) == 0.77);
}

TEST_CASE("analytic Jacobian agrees with central finite differences") {
  const auto basis = HermiteBasis::build(4);
  std::vector<TrainingSample> toy;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXd f(4);
    for (int j = 0; j < 4; ++j) f[j] = uniform_draw(rng, -1.0, 1.0);
    toy.push_back({f, uniform_draw(rng, 0.2, 0.6), Representation::PV});
  }
  MlpTrainConfig config;
  config.seed = 42;
  config.max_epochs = 1;  // just to obtain an initialized network
  const MlpModel m = train_mlp(toy, {3, 2}, config);

  const Eigen::VectorXd theta = mlp_get_parameters(m);
  for (const auto& sample : toy) {
    const Eigen::VectorXd x = m.scaler.transform(sample.features);
    const Eigen::VectorXd analytic = mlp_parameter_gradient(m, x);
    for (int i = 0; i < theta.size(); ++i) {
      MlpModel plus = m, minus = m;
      Eigen::VectorXd tp = theta, tm = theta;
      tp[i] += 1e-6;
      tm[i] -= 1e-6;
      mlp_set_parameters(plus, tp);
      mlp_set_parameters(minus, tm);
      const double fd =
          (predict_mlp(plus, sample.features) - predict_mlp(minus, sample.features)) /
          2e-6;
      CHECK(analytic[i] == doctest::Approx(fd).epsilon(1e-5).scale(1e-3));
    }
  }
}

TEST_CASE("constant-target corpus converges to the constant") {
  const auto basis = HermiteBasis::build(6);
  std::vector<TrainingSample> corpus;
  std::mt19937_64 rng(9);
  for (int k = 0; k < 12; ++k) {
    Eigen::VectorXd f(6);
    for (int j = 0; j < 6; ++j) f[j] = uniform_draw(rng, -1.0, 1.0);
    corpus.push_back({f, 0.31, Representation::PV});
  }
  MlpTrainConfig config;
  config.seed = 1;
  const MlpModel m = train_mlp(corpus, {5, 5}, config);
  for (const auto& s : corpus)
    CHECK(predict_mlp(m, s.features) == doctest::Approx(0.31).epsilon(1e-4));
}

TEST_CASE("gaussian corpus: in-sample fit and held-out width") {
  const auto basis = HermiteBasis::build(10);
  const auto corpus = gen_gaussian_samples(basis, 40, {0.2, 0.6}, {0.0, 1.0}, 7);
  MlpTrainConfig config;
  config.seed = 3;
  const MlpModel m = train_mlp(corpus.fc, {20, 10}, config);

  double in_sample = 0.0;
  for (const auto& s : corpus.fc) {
    const double d = predict_mlp(m, s.features) - s.target_alpha;
    in_sample += d * d;
  }
  in_sample = std::sqrt(in_sample / corpus.fc.size());
  CHECK(in_sample < 0.02);

  const double a = 0.35;
  const Eigen::VectorXd values = (-a * a * basis.nodes.array().square()).exp();
  const Eigen::VectorXd features = fc_features_from_node_values(basis, values);
  CHECK(std::abs(predict_mlp(m, features) - a) < 0.05);

  // regression-health band: held-out error comparable to in-sample
  std::mt19937_64 rng(31);
  double held_out = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double aa = uniform_draw(rng, 0.25, 0.55);
    const double h = uniform_draw(rng, 0.2, 1.0);
    const Eigen::VectorXd v = h * (-aa * aa * basis.nodes.array().square()).exp();
    const double d = predict_mlp(m, fc_features_from_node_values(basis, v)) - aa;
    held_out += d * d;
  }
  held_out = std::sqrt(held_out / 20);
  CHECK(in_sample <= held_out + 1e-12);
  CHECK(held_out <= 0.06);
}

TEST_CASE("training is deterministic under the seed") {
  const auto basis = HermiteBasis::build(10);
  const auto corpus = gen_gaussian_samples(basis, 20, {0.2, 0.6}, {0.0, 1.0}, 5);
  MlpTrainConfig config;
  config.seed = 11;
  config.max_epochs = 50;
  const MlpModel a = train_mlp(corpus.pv, {5, 5}, config);
  const MlpModel b = train_mlp(corpus.pv, {5, 5}, config);
  CHECK(mlp_get_parameters(a) == mlp_get_parameters(b));  // bitwise
}

TEST_CASE("accepted LM steps never increase the loss") {
  // train twice with different budgets: the longer run can only be at least
  // as good, which pins the monotonicity of accepted steps
  const auto basis = HermiteBasis::build(8);
  const auto corpus = gen_gaussian_samples(basis, 16, {0.2, 0.6}, {0.0, 1.0}, 2);
  MlpTrainConfig short_run;
  short_run.seed = 4;
  short_run.max_epochs = 10;
  short_run.target_mse = 0.0;
  MlpTrainConfig long_run = short_run;
  long_run.max_epochs = 60;
  const MlpModel a = train_mlp(corpus.pv, {5, 5}, short_run);
  const MlpModel b = train_mlp(corpus.pv, {5, 5}, long_run);
  CHECK(b.final_mse <= a.final_mse + 1e-15);
}
