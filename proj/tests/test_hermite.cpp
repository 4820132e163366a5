#include <cmath>
#include <random>

#include "doctest.h"
#include "hsc/hermite.hpp"

using namespace hsc;

namespace {
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
}

// integral of x^k exp(-x^2) over R: 0 for odd k, (k-1)!! sqrt(pi) / 2^(k/2) else
double gaussian_moment(int k) {
  if (k % 2 == 1) return 0.0;
  double value = std::sqrt(M_PI);
  for (int j = k - 1; j >= 1; j -= 2) value *= 0.5 * j;
  return value;
}
}  // namespace

TEST_CASE("hermite_eval base cases and recurrence") {
  CHECK(hermite_eval(0, 3.7) == 1.0);
  CHECK(hermite_eval(1, 2.0) == 4.0);
  CHECK(hermite_eval(3, 1.0) == doctest::Approx(-4.0));  // 8 - 12
  CHECK(hermite_eval(-1, 0.3) == 0.0);
}

TEST_CASE("hermite_eval_all matches single evaluations") {
  const Eigen::VectorXd at_zero = hermite_eval_all(2, 0.0);
  CHECK(at_zero[0] == 1.0);
  CHECK(at_zero[1] == 0.0);
  CHECK(at_zero[2] == -2.0);
  const Eigen::VectorXd at_one = hermite_eval_all(3, 1.0);
  CHECK(at_one[0] == 1.0);
  CHECK(at_one[1] == 2.0);
  CHECK(at_one[2] == 2.0);
  CHECK(at_one[3] == doctest::Approx(-4.0));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const double z = uniform(rng, -4.0, 4.0);
    const Eigen::VectorXd all = hermite_eval_all(12, z);
    for (int k = 0; k <= 12; ++k)
      CHECK(all[k] == doctest::Approx(hermite_eval(k, z)).epsilon(1e-14));
  }
}

TEST_CASE("compute_nodes small cases") {
  CHECK(compute_nodes(1) == std::vector<double>{0.0});
  const auto n2 = compute_nodes(2);
  CHECK(n2[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
  CHECK(n2[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  const auto n3 = compute_nodes(3);
  CHECK(n3[0] == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-14));
  CHECK(n3[1] == 0.0);
  CHECK(n3[2] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
}

TEST_CASE("node invariants: antisymmetry, ordering, normalized residual") {
  for (int n : {4, 8, 10, 16, 32, 200}) {
    const auto nodes = compute_nodes(n);
    for (int j = 0; j < n; ++j) {
      CHECK(nodes[j] == -nodes[n - 1 - j]);
      if (j) CHECK(nodes[j] > nodes[j - 1]);
    }
    if (n > 32) continue;  // plain H_n evaluation overflows well before n = 200
    double max_abs = 0.0;
    for (int i = 0; i <= 500; ++i) {
      const double x = nodes[0] + (nodes[n - 1] - nodes[0]) * i / 500.0;
      max_abs = std::max(max_abs, std::abs(hermite_eval(n, x)));
    }
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(hermite_eval(n, nodes[j])) / max_abs < 1e-10);
  }
}

TEST_CASE("weights: closed forms, positivity, normalization") {
  const auto w1 = compute_weights(1, compute_nodes(1));
  CHECK(w1[0] == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  const auto w2 = compute_weights(2, compute_nodes(2));
  CHECK(w2[0] == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(w2[1] == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-13));
  for (int n : {4, 8, 10, 16, 32, 150, 200}) {
    const auto w = compute_weights(n, compute_nodes(n));
    double sum = 0.0;
    for (double wj : w) {
      CHECK(wj > 0.0);
      sum += wj;
    }
    CHECK(sum == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  }
}

TEST_CASE("quadrature: normalization, parity, second moment") {
  for (int n : {2, 4, 10, 16}) {
    const auto basis = HermiteBasis::build(n);
    CHECK(gauss_hermite_integrate(basis, Eigen::VectorXd::Ones(n)) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(std::abs(gauss_hermite_integrate(basis, basis.nodes)) < 1e-14);
    if (n >= 2) {
      const Eigen::VectorXd x2 = basis.nodes.cwiseAbs2();
      CHECK(gauss_hermite_integrate(basis, x2) ==
            doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-13));
    }
  }
}

TEST_CASE("quadrature exactness on random polynomials of degree < 2N") {
  std::mt19937_64 rng(11);
  for (int n : {4, 8, 16, 32}) {
    const auto basis = HermiteBasis::build(n);
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd coeff(2 * n);
      for (int k = 0; k < 2 * n; ++k) coeff[k] = uniform(rng, -1.0, 1.0);
      Eigen::VectorXd samples = Eigen::VectorXd::Zero(n);
      for (int j = 0; j < n; ++j) {
        double pow = 1.0;
        for (int k = 0; k < 2 * n; ++k) {
          samples[j] += coeff[k] * pow;
          pow *= basis.nodes[j];
        }
      }
      double exact = 0.0;
      for (int k = 0; k < 2 * n; k += 2) exact += coeff[k] * gaussian_moment(k);
      CHECK(gauss_hermite_integrate(basis, samples) ==
            doctest::Approx(exact).epsilon(1e-9));
    }
  }
}

TEST_CASE("differentiation matrices") {
  SUBCASE("n = 1 is the zero operator") {
    const auto basis = HermiteBasis::build(1);
    CHECK(basis.d1(0, 0) == 0.0);
    CHECK(basis.d2(0, 0) == 0.0);
  }
  SUBCASE("exact differentiation of monomials below degree N") {
    std::mt19937_64 rng(3);
    for (int n : {2, 6, 10, 16}) {
      const auto basis = HermiteBasis::build(n);
      for (int deg = 0; deg < n; ++deg) {
        Eigen::VectorXd q(n), dq(n), d2q(n);
        for (int j = 0; j < n; ++j) {
          q[j] = std::pow(basis.nodes[j], deg);
          dq[j] = deg > 0 ? deg * std::pow(basis.nodes[j], deg - 1) : 0.0;
          d2q[j] = deg > 1 ? deg * (deg - 1) * std::pow(basis.nodes[j], deg - 2) : 0.0;
        }
        const Eigen::VectorXd d1q = basis.d1 * q;
        const Eigen::VectorXd d2q_num = basis.d2 * q;
        const double scale = q.cwiseAbs().maxCoeff() + 1.0;
        for (int j = 0; j < n; ++j) {
          CHECK(std::abs(d1q[j] - dq[j]) / scale < 1e-9);
          CHECK(std::abs(d2q_num[j] - d2q[j]) / scale < 1e-8);
        }
      }
    }
  }
  SUBCASE("row sums of D1 vanish and D2 = D1*D1") {
    const auto basis = HermiteBasis::build(10);
    const Eigen::VectorXd row_sums = basis.d1 * Eigen::VectorXd::Ones(10);
    for (int j = 0; j < 10; ++j) CHECK(std::abs(row_sums[j]) < 1e-10);
    const Eigen::MatrixXd product = basis.d1 * basis.d1;
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        CHECK(basis.d2(i, j) == doctest::Approx(product(i, j)).epsilon(1e-10));
  }
}

TEST_CASE("appendix identities at random points") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const double z = uniform(rng, -5.0, 5.0);
    for (int l = 0; l <= 20; ++l) {
      const Eigen::VectorXd h = hermite_eval_all(l + 1, z);
      const double h_l = h[l];
      const double h_lm1 = l >= 1 ? h[l - 1] : 0.0;
      const double h_lm2 = l >= 2 ? h[l - 2] : 0.0;
      const double h_lp1 = h[l + 1];
      const double deriv = 2.0 * l * h_lm1;
      const double deriv2 = 4.0 * l * (l - 1) * h_lm2;
      const double scale = std::abs(h_l) + std::abs(h_lm1) + std::abs(h_lp1) + 1.0;

      // H'_l = 2 l H_{l-1} against a central difference
      const double fd = (hermite_eval(l, z + 1e-6) - hermite_eval(l, z - 1e-6)) / 2e-6;
      CHECK(std::abs(deriv - fd) / (std::abs(deriv) + 1.0) < 1e-4);

      // 2 z H'_l = H''_l + 2 l H_l
      CHECK(std::abs(2.0 * z * deriv - (deriv2 + 2.0 * l * h_l)) / scale < 1e-8);

      // z H_l = l H_{l-1} + H_{l+1}/2  (l = 0 reduces to z H_0 = H_1 / 2)
      CHECK(std::abs(z * h_l - (l * h_lm1 + 0.5 * h_lp1)) / scale < 1e-8);
    }
  }
}

TEST_CASE("orthogonality through the quadrature rule") {
  const int n = 16;
  const auto basis = HermiteBasis::build(n);
  double fact = 1.0;  // 2^m m!
  for (int m = 0; m < n; fact *= 2.0 * (++m)) {
    for (int l = 0; l + m < 2 * n && l < n; ++l) {
      Eigen::VectorXd samples(n);
      for (int j = 0; j < n; ++j)
        samples[j] = basis.vandermonde(l, j) * basis.vandermonde(m, j);
      const double integral = gauss_hermite_integrate(basis, samples);
      const double norm = fact * std::sqrt(M_PI);
      if (l == m) {
        CHECK(integral == doctest::Approx(norm).epsilon(1e-8));
      } else {
        const double scale =
            std::sqrt(norm * std::abs(gauss_hermite_integrate(
                                 basis, basis.vandermonde.row(l).cwiseAbs2())));
        CHECK(std::abs(integral) / scale < 1e-8);
      }
    }
  }
}

TEST_CASE("admissible alpha interval is sane") {
  const auto basis = HermiteBasis::build(10);
  const auto interval = basis.admissible_alpha();
  CHECK(interval.lo < 0.3);
  CHECK(interval.hi > 0.6);
  CHECK(interval.clamp(0.45) == 0.45);
  CHECK(interval.clamp(1e9) == interval.hi);
  const auto iv16 = HermiteBasis::build(16).admissible_alpha();
  CHECK(iv16.lo < 0.7);
  CHECK(iv16.hi > 1.25);
}

TEST_CASE("barycentric interpolation reproduces samples and sin(x)") {
  const auto basis = HermiteBasis::build(16);
  Eigen::VectorXd values(16);
  for (int j = 0; j < 16; ++j) values[j] = std::sin(basis.nodes[j]);
  for (int j = 0; j < 16; ++j)
    CHECK(barycentric_eval(basis.nodes, basis.bary, values, basis.nodes[j]) ==
          values[j]);
  double worst_core = 0.0;   // [-4, 4]
  double worst_range = 0.0;  // full node range
  for (int i = 0; i <= 4000; ++i) {
    const double x = -5.0 + 10.0 * i / 4000.0;
    if (std::abs(x) > std::abs(basis.nodes[15])) continue;
    const double err =
        std::abs(barycentric_eval(basis.nodes, basis.bary, values, x) - std::sin(x));
    worst_range = std::max(worst_range, err);
    if (std::abs(x) <= 4.0) worst_core = std::max(worst_core, err);
  }
  CHECK(worst_core < 1e-6);    // 1.30e-7 by direct dense comparison
  CHECK(worst_range < 2e-6);   // 1.53e-6, dominated by the outermost gap
}
