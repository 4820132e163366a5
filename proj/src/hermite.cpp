#include "hsc/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hsc {

namespace {
constexpr double kRescaleThreshold = 1e140;
constexpr double kRescaleFactor = 1e-140;
const double kLogRescale = std::log(1e140);
}  // namespace

double hermite_eval(int n, double zeta) {
  if (n < 0) return 0.0;
  double hm1 = 0.0;
  double h = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * zeta * h - 2.0 * k * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

Eigen::VectorXd hermite_eval_all(int n_max, double zeta) {
  Eigen::VectorXd out(n_max + 1);
  double hm1 = 0.0;
  double h = 1.0;
  out[0] = h;
  for (int k = 0; k < n_max; ++k) {
    const double next = 2.0 * zeta * h - 2.0 * k * hm1;
    hm1 = h;
    h = next;
    out[k + 1] = h;
  }
  return out;
}

void hermite_eval_scaled(int n, double zeta, double& hn, double& hnm1,
                         double& log_scale) {
  double hm1 = 0.0;
  double h = 1.0;
  log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * zeta * h - 2.0 * k * hm1;
    hm1 = h;
    h = next;
    if (std::abs(h) > kRescaleThreshold) {
      h *= kRescaleFactor;
      hm1 *= kRescaleFactor;
      log_scale += kLogRescale;
    }
  }
  hn = h;
  hnm1 = hm1;
}

double hermite_log_abs_deriv(int n, double zeta, int& sign) {
  double hn, hnm1, ls;
  hermite_eval_scaled(n, zeta, hn, hnm1, ls);
  sign = hnm1 >= 0.0 ? 1 : -1;
  return std::log(2.0 * n * std::abs(hnm1)) + ls;
}

std::vector<double> compute_nodes(int n) {
  if (n < 1 || n > 200) throw std::invalid_argument("compute_nodes: n out of range");
  if (n == 1) return {0.0};

  // Golub-Welsch: the Jacobi matrix of the Hermite weight has zero diagonal
  // and off-diagonal entries sqrt(k/2).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(0.5 * k);
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("compute_nodes: eigen decomposition failed");

  std::vector<double> nodes(n);
  for (int j = 0; j < n; ++j) {
    double x = eig.eigenvalues()[j];
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double hn, hnm1, ls;
      hermite_eval_scaled(n, x, hn, hnm1, ls);
      const double ratio = hn / (2.0 * n * hnm1);  // H_n / H'_n
      x -= ratio;
      if (std::abs(ratio) < 1e-14 * (1.0 + std::abs(x))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw std::runtime_error("compute_nodes: Newton polish did not converge at n=" +
                               std::to_string(n));
    nodes[j] = x;
  }

  // Enforce exact antisymmetry xi_j = -xi_{n+1-j}.
  for (int j = 0; j < n / 2; ++j) {
    const double v = 0.5 * (nodes[n - 1 - j] - nodes[j]);
    nodes[j] = -v;
    nodes[n - 1 - j] = v;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return nodes;
}

std::vector<double> compute_weights(int n, const std::vector<double>& nodes) {
  if (static_cast<int>(nodes.size()) != n)
    throw std::invalid_argument("compute_weights: node count mismatch");
  const double base = 0.5 * std::log(M_PI) + (n + 1) * std::log(2.0) +
                      std::lgamma(n + 1.0);
  std::vector<double> w(n);
  for (int j = 0; j < (n + 1) / 2; ++j) {
    int sign;
    const double log_deriv = hermite_log_abs_deriv(n, nodes[j], sign);
    const double wj = std::exp(base - 2.0 * log_deriv);
    if (!std::isfinite(wj) || wj <= 0.0)
      throw std::runtime_error("compute_weights: non-finite weight at n=" +
                               std::to_string(n));
    w[j] = wj;
    w[n - 1 - j] = wj;  // symmetric partner gets the identical value
  }
  return w;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> diff_matrices(
    int n, const std::vector<double>& nodes) {
  if (static_cast<int>(nodes.size()) != n)
    throw std::invalid_argument("diff_matrices: node count mismatch");
  Eigen::VectorXd log_deriv(n);
  Eigen::VectorXi sign(n);
  for (int j = 0; j < n; ++j) {
    int s;
    log_deriv[j] = n == 1 ? 0.0 : hermite_log_abs_deriv(n, nodes[j], s);
    sign[j] = n == 1 ? 1 : s;
  }
  Eigen::MatrixXd d1(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        d1(i, i) = nodes[i];  // l'_j(xi_j) = H''_n/(2 H'_n) = xi_j at a zero
      } else {
        d1(i, j) = sign[i] * sign[j] * std::exp(log_deriv[i] - log_deriv[j]) /
                   (nodes[i] - nodes[j]);
      }
    }
  }
  Eigen::MatrixXd d2 = d1 * d1;
  return {std::move(d1), std::move(d2)};
}

HermiteBasis HermiteBasis::build(int n) {
  HermiteBasis basis;
  basis.n = n;
  const std::vector<double> nodes = compute_nodes(n);
  const std::vector<double> weights = compute_weights(n, nodes);
  basis.nodes = Eigen::Map<const Eigen::VectorXd>(nodes.data(), n);
  basis.weights = Eigen::Map<const Eigen::VectorXd>(weights.data(), n);
  auto [d1, d2] = diff_matrices(n, nodes);
  basis.d1 = std::move(d1);
  basis.d2 = std::move(d2);

  // Exact barycentric weights 1/prod_{k!=j}(xi_j - xi_k) = 2^n / H'_n(xi_j),
  // evaluated in log space. The exact scale lets the first barycentric form
  // extrapolate beyond the node range without the cancellation that the
  // normalized second form suffers there.
  basis.bary.resize(n);
  for (int j = 0; j < n; ++j) {
    if (n == 1) {
      basis.bary[j] = 1.0;
      continue;
    }
    int s;
    const double log_deriv = hermite_log_abs_deriv(n, nodes[j], s);
    basis.bary[j] = s * std::exp(n * std::log(2.0) - log_deriv);
  }

  basis.vandermonde.resize(n, n);
  for (int j = 0; j < n; ++j)
    basis.vandermonde.col(j) = hermite_eval_all(n - 1, nodes[j]);
  return basis;
}

AlphaInterval HermiteBasis::admissible_alpha() const {
  const double xi_max = std::abs(nodes[n - 1]);
  AlphaInterval iv;
  if (n == 1 || xi_max == 0.0) {
    iv.lo = 0.0;
    iv.hi = std::numeric_limits<double>::infinity();
    return iv;
  }
  // Lower bound: exp(-(alpha xi_max)^2) <= 1/2, so the Gaussian actually
  // decays across the node range instead of looking flat.
  iv.lo = std::sqrt(std::log(2.0)) / xi_max;
  // Upper bounds: stay above machine epsilon at the outermost node, and keep
  // at least ceil(n/2) nodes where the Gaussian exceeds 1e-8.
  const double eps_bound =
      std::sqrt(-std::log(std::numeric_limits<double>::epsilon())) / xi_max;
  std::vector<double> abs_nodes(n);
  for (int j = 0; j < n; ++j) abs_nodes[j] = std::abs(nodes[j]);
  std::sort(abs_nodes.begin(), abs_nodes.end());
  const int needed = (n + 1) / 2;
  const double xi_k = abs_nodes[needed - 1];
  const double support_bound =
      xi_k > 0.0 ? std::sqrt(std::log(1e8)) / xi_k
                 : std::numeric_limits<double>::infinity();
  iv.hi = std::min(eps_bound, support_bound);
  return iv;
}

double gauss_hermite_integrate(const HermiteBasis& basis,
                               const Eigen::VectorXd& f_at_nodes) {
  if (f_at_nodes.size() != basis.n)
    throw std::invalid_argument("gauss_hermite_integrate: sample count mismatch");
  const int n = basis.n;
  double sum = 0.0;
  for (int j = 0; j < n / 2; ++j) {
    sum += basis.weights[j] * f_at_nodes[j] +
           basis.weights[n - 1 - j] * f_at_nodes[n - 1 - j];
  }
  if (n % 2 == 1) sum += basis.weights[n / 2] * f_at_nodes[n / 2];
  return sum;
}

double barycentric_eval(const Eigen::VectorXd& nodes, const Eigen::VectorXd& bary,
                        const Eigen::VectorXd& values, double x) {
  const int n = static_cast<int>(nodes.size());
  if (x >= nodes[0] && x <= nodes[n - 1]) {
    // second form: stable inside the node range
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < n; ++j) {
      const double dx = x - nodes[j];
      if (dx == 0.0) return values[j];
      const double t = bary[j] / dx;
      num += t * values[j];
      den += t;
    }
    return num / den;
  }
  // first form for extrapolation: the second form's denominator cancels
  // catastrophically outside symmetric node sets
  double omega = 1.0;
  for (int j = 0; j < n; ++j) omega *= x - nodes[j];
  double sum = 0.0;
  for (int j = 0; j < n; ++j)
    sum += omega / (x - nodes[j]) * bary[j] * values[j];
  return sum;
}

}  // namespace hsc
