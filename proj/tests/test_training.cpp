#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "hsc/training.hpp"
#include "hsc/transform.hpp"

using namespace hsc;

TEST_CASE("clamped cubic spline construction") {
  SUBCASE("zero data gives the zero spline") {
    const CubicSpline s = CubicSpline::clamped(4.5, Eigen::VectorXd::Zero(5));
    for (double x : {-4.0, -1.0, 0.0, 2.2, 4.4}) CHECK(s(x) == 0.0);
  }
  SUBCASE("single centered value: symmetric bump hitting the value") {
    Eigen::VectorXd values(1);
    values[0] = 0.7;
    const CubicSpline s = CubicSpline::clamped(2.0, values);
    CHECK(s(0.0) == doctest::Approx(0.7).epsilon(1e-12));
    for (double x : {0.3, 0.9, 1.5})
      CHECK(s(x) == doctest::Approx(s(-x)).epsilon(1e-12));
    CHECK(s(2.0) == 0.0);
    CHECK(s(5.0) == 0.0);
  }
  SUBCASE("interpolates random break values, clamped at the ends") {
    const CubicSpline s = gen_spline(4.5, 5, 1.0, 99);
    const double h = 9.0 / 6.0;
    for (int i = 1; i <= 5; ++i)
      CHECK(s(-4.5 + i * h) ==
            doctest::Approx(s.break_values()[i]).epsilon(1e-12));
    // boundary conditions: value and slope vanish at +-c
    const double fd = 1e-6;
    CHECK(std::abs(s(-4.5 + fd) - 0.0) / fd < 1e-4);
    CHECK(std::abs(s(4.5 - fd) - 0.0) / fd < 1e-4);
    // C1 across the support boundary and interior breaks
    for (double x : {-4.5, 4.5, -4.5 + h, 1.5 * h}) {
      const double left = (s(x) - s(x - fd)) / fd;
      const double right = (s(x + fd) - s(x)) / fd;
      CHECK(std::abs(left - right) < 1e-4);
    }
  }
}

TEST_CASE("gaussian corpus") {
  const auto basis = HermiteBasis::build(10);
  const auto corpus = gen_gaussian_samples(basis, 40, {0.2, 0.6}, {0.0, 1.0}, 7);
  CHECK(corpus.pv.size() == 40);
  CHECK(corpus.fc.size() == 40);

  SUBCASE("deterministic under the seed") {
    const auto again = gen_gaussian_samples(basis, 40, {0.2, 0.6}, {0.0, 1.0}, 7);
    for (int k = 0; k < 40; ++k) {
      CHECK(again.pv[k].features == corpus.pv[k].features);
      CHECK(again.fc[k].target_alpha == corpus.fc[k].target_alpha);
    }
    const auto other = gen_gaussian_samples(basis, 40, {0.2, 0.6}, {0.0, 1.0}, 8);
    CHECK(other.pv[0].features != corpus.pv[0].features);
  }
  SUBCASE("targets lie in the generation interval") {
    for (const auto& s : corpus.pv) {
      CHECK(s.target_alpha >= 0.2);
      CHECK(s.target_alpha <= 0.6);
    }
  }
  SUBCASE("a = 1 Gaussian has a single Fourier mode") {
    const Eigen::VectorXd values =
        0.37 * (-basis.nodes.array().square()).exp();
    const Eigen::VectorXd fc = fc_features_from_node_values(basis, values);
    CHECK(fc[0] == doctest::Approx(0.37).epsilon(1e-10));
    for (int m = 1; m < 10; ++m) CHECK(std::abs(fc[m]) < 1e-10);
  }
  SUBCASE("PV and FC encodings agree through pv_to_fc") {
    for (int k = 0; k < 40; ++k) {
      const Eigen::VectorXd fc =
          fc_features_from_node_values(basis, corpus.pv[k].features);
      for (int m = 0; m < 10; ++m)
        CHECK(fc[m] == doctest::Approx(corpus.fc[k].features[m]).epsilon(1e-9));
    }
  }
}

TEST_CASE("minimizing Hermite function labeling") {
  const auto basis = HermiteBasis::build(16);
  const Eigen::VectorXd grid = default_gamma_grid();

  SUBCASE("pure Gaussians recover their width") {
    for (double a : {0.55, 0.8, 1.0, 1.2, 1.45}) {
      const auto label = minimizing_hermite_function(
          basis, [a](double x) { return 0.6 * std::exp(-a * a * x * x); },
          {0.5, 1.5}, grid);
      CHECK(std::abs(label.alpha_k - a) < 0.01);
      // polynomial part is the constant height at the minimizing alpha
      for (int j = 3; j < 13; ++j)  // inner nodes; outer ones amplify exp noise
        CHECK(label.p_tilde_at_nodes[j] == doctest::Approx(0.6).epsilon(0.05));
    }
  }
  SUBCASE("the reported minimum is a minimum over the grid") {
    const CubicSpline s = gen_spline(4.5, 5, 1.0, 5);
    const auto profile = [&s](double x) { return s(x); };
    const auto label =
        minimizing_hermite_function(basis, profile, {0.5, 1.5}, grid);
    CHECK(label.gamma_min >= 0.0);
    for (int i = 0; i <= 100; ++i) {
      const double a = 0.5 + i / 100.0;
      CHECK(gamma_mismatch(basis, profile, a, grid) >= label.gamma_min - 1e-12);
    }
  }
  SUBCASE("label stability under a 10x finer scan") {
    const CubicSpline s = gen_spline(4.5, 5, 1.0, 11);
    const auto profile = [&s](double x) { return s(x); };
    const auto label =
        minimizing_hermite_function(basis, profile, {0.5, 1.5}, grid);
    double best_alpha = 0.5;
    double best = 1e300;
    for (int i = 0; i <= 1000; ++i) {
      const double a = 0.5 + i / 1000.0;
      const double g = gamma_mismatch(basis, profile, a, grid);
      if (g < best) {
        best = g;
        best_alpha = a;
      }
    }
    CHECK(std::abs(label.alpha_k - best_alpha) < 0.01);  // coarse-grid spacing
  }
}

TEST_CASE("spline corpus") {
  const auto basis = HermiteBasis::build(16);
  SplineCorpusParams params;
  params.k = 8;  // keep the unit test quick; the full K=40 runs in acceptance
  const auto corpus = build_spline_corpus(basis, params, 21);

  CHECK(corpus.pv.size() == 8);
  CHECK(corpus.fc.size() == 8);
  SUBCASE("targets live in the search interval") {
    for (const auto& s : corpus.pv) {
      CHECK(s.target_alpha >= 0.5);
      CHECK(s.target_alpha <= 1.5);
    }
  }
  SUBCASE("representations are consistent") {
    for (int k = 0; k < 8; ++k) {
      const Eigen::VectorXd fc =
          fc_features_from_node_values(basis, corpus.pv[k].features);
      for (int m = 0; m < 16; ++m)
        CHECK(fc[m] == doctest::Approx(corpus.fc[k].features[m]).epsilon(1e-9));
    }
  }
  SUBCASE("deterministic under the seed") {
    const auto again = build_spline_corpus(basis, params, 21);
    for (int k = 0; k < 8; ++k) {
      CHECK(again.pv[k].features == corpus.pv[k].features);
      CHECK(again.pv[k].target_alpha == corpus.pv[k].target_alpha);
    }
  }
}

TEST_CASE("corpus CSV round trip") {
  const auto basis = HermiteBasis::build(10);
  const auto corpus = gen_gaussian_samples(basis, 6, {0.2, 0.6}, {0.0, 1.0}, 3);
  const auto path = std::filesystem::temp_directory_path() / "hsc_corpus_test.csv";
  write_corpus_csv(corpus, path);
  const auto back = read_corpus_csv(path);
  REQUIRE(back.pv.size() == corpus.pv.size());
  REQUIRE(back.fc.size() == corpus.fc.size());
  for (size_t k = 0; k < corpus.pv.size(); ++k) {
    CHECK(back.pv[k].target_alpha == corpus.pv[k].target_alpha);
    CHECK(back.pv[k].features == corpus.pv[k].features);  // 17 digits round-trip
    CHECK(back.fc[k].features == corpus.fc[k].features);
  }
  std::filesystem::remove(path);
}
