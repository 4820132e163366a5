#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hsc/svr.hpp"

using namespace hsc;

namespace {

std::vector<TrainingSample> gaussian_corpus(const HermiteBasis& basis,
                                            Representation rep, uint64_t seed) {
  return rep == Representation::PV
             ? gen_gaussian_samples(basis, 40, {0.2, 0.6}, {0.0, 1.0}, seed).pv
             : gen_gaussian_samples(basis, 40, {0.2, 0.6}, {0.0, 1.0}, seed).fc;
}

double rmse(const SvrModel& model, const std::vector<TrainingSample>& samples) {
  double sum = 0.0;
  for (const auto& s : samples) {
    const double d = predict_svr(model, s.features) - s.target_alpha;
    sum += d * d;
  }
  return std::sqrt(sum / samples.size());
}

}  // namespace

TEST_CASE("single-sample corpus: bias absorbs the target") {
  Eigen::VectorXd f(4);
  f << 1.0, 2.0, 3.0, 4.0;
  const std::vector<TrainingSample> corpus = {{f, 0.37, Representation::PV}};
  const SvrModel model = train_svr(corpus, {});
  CHECK(predict_svr(model, f) == doctest::Approx(0.37).epsilon(1e-9));
  Eigen::VectorXd other(4);
  other << -1.0, 0.0, 5.0, 2.0;
  CHECK(predict_svr(model, other) == doctest::Approx(0.37).epsilon(1e-6));
}

TEST_CASE("degenerate corpus with equal targets gives a constant predictor") {
  const auto basis = HermiteBasis::build(6);
  std::vector<TrainingSample> corpus;
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    Eigen::VectorXd f(6);
    for (int j = 0; j < 6; ++j) f[j] = uniform_draw(rng, -1.0, 1.0);
    corpus.push_back({f, 0.42, Representation::PV});
  }
  const SvrModel model = train_svr(corpus, {});
  for (const auto& s : corpus)
    CHECK(predict_svr(model, s.features) == doctest::Approx(0.42).epsilon(1e-5));
}

TEST_CASE("gaussian corpus: fit quality and held-out prediction") {
  const auto basis = HermiteBasis::build(10);
  for (Representation rep : {Representation::PV, Representation::FC}) {
    const auto corpus = gaussian_corpus(basis, rep, 7);
    const SvrModel model = train_svr(corpus, {});

    CHECK(rmse(model, corpus) <= 0.02);

    // fresh Gaussian (a, H) = (0.45, 0.7)
    const double a = 0.45;
    const Eigen::VectorXd values =
        0.7 * (-a * a * basis.nodes.array().square()).exp();
    const Eigen::VectorXd features =
        rep == Representation::PV ? values
                                  : fc_features_from_node_values(basis, values);
    CHECK(std::abs(predict_svr(model, features) - a) < 0.02);
  }
}

TEST_CASE("dual structure: sum, box bound, nu-property, tube") {
  const auto basis = HermiteBasis::build(10);
  const auto corpus = gaussian_corpus(basis, Representation::FC, 7);
  SvrParams params;
  const SvrModel model = train_svr(corpus, params);

  CHECK(std::abs(model.dual_sum) < 1e-9);  // equality constraint of the dual
  for (int s = 0; s < model.dual_coeffs.size(); ++s)
    CHECK(std::abs(model.dual_coeffs[s]) <= model.box_bound + 1e-12);
  // nu-property: support vectors are at least nu * l - 1
  CHECK(model.dual_coeffs.size() >=
        static_cast<int>(params.nu * corpus.size()) - 1);
  // a free support vector predicts its target within the recovered tube
  CHECK(model.epsilon >= 0.0);
  CHECK(model.epsilon < 0.01);
  int checked = 0;
  for (size_t k = 0; k < corpus.size(); ++k) {
    const double pred = predict_svr(model, corpus[k].features);
    const double err = std::abs(pred - corpus[k].target_alpha);
    if (err > 1e-12) CHECK(err <= std::max(model.epsilon * 1.5, 0.01));
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("training is invariant under corpus reordering") {
  const auto basis = HermiteBasis::build(10);
  auto corpus = gaussian_corpus(basis, Representation::PV, 11);
  const SvrModel base = train_svr(corpus, {});
  std::reverse(corpus.begin(), corpus.end());
  const SvrModel reversed = train_svr(corpus, {});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd f(10);
    for (int j = 0; j < 10; ++j) f[j] = uniform_draw(rng, 0.0, 1.0);
    CHECK(predict_svr(base, f) ==
          doctest::Approx(predict_svr(reversed, f)).epsilon(1e-7));
  }
}

TEST_CASE("prediction is smooth in the features") {
  const auto basis = HermiteBasis::build(10);
  const auto corpus = gaussian_corpus(basis, Representation::PV, 13);
  const SvrModel model = train_svr(corpus, {});
  const Eigen::VectorXd f = corpus[5].features;
  const double base = predict_svr(model, f);
  for (int j = 0; j < 10; ++j) {
    Eigen::VectorXd g = f;
    g[j] += 1e-8;
    CHECK(std::abs(predict_svr(model, g) - base) < 1e-5);
  }
}
