#include "hsc/heat.hpp"

#include <cmath>
#include <stdexcept>

namespace hsc {

double exact_alpha_homogeneous(double t) { return 0.5 / std::sqrt(t + 1.0); }

double exact_homogeneous(double x, double t) {
  const double a = exact_alpha_homogeneous(t);
  return 2.0 * a * std::exp(-a * a * x * x);
}

double exact_alpha_nonhomogeneous(double t) {
  return std::sqrt(2.0) / std::sqrt(3.0 * t + 1.0);
}

double exact_nonhomogeneous(double x, double t) {
  const double a2 = 2.0 / (3.0 * t + 1.0);
  const double s = t * std::sin(x);
  return (std::cos(0.5 * x * t) + 2.0 * s * s) * std::exp(-a2 * x * x);
}

double forcing_nonhomogeneous(double x, double t) {
  const double a2 = 2.0 / (3.0 * t + 1.0);           // alpha(t)^2
  const double da2 = -6.0 / ((3.0 * t + 1.0) * (3.0 * t + 1.0));
  const double sx = std::sin(x);
  const double c_half = std::cos(0.5 * x * t);
  const double s_half = std::sin(0.5 * x * t);
  const double g = c_half + 2.0 * t * t * sx * sx;
  const double g_t = -0.5 * x * s_half + 4.0 * t * sx * sx;
  const double g_x = -0.5 * t * s_half + 2.0 * t * t * std::sin(2.0 * x);
  const double g_xx = -0.25 * t * t * c_half + 4.0 * t * t * std::cos(2.0 * x);
  const double bracket = g_t - da2 * x * x * g - g_xx + 4.0 * a2 * x * g_x -
                         (4.0 * a2 * a2 * x * x - 2.0 * a2) * g;
  return bracket * std::exp(-a2 * x * x);
}

namespace {

// Constant-alpha collocation operator D2 - 4 a^2 xi D1 + diag(2 a^2 (2 (a xi)^2 - 1)).
Eigen::MatrixXd collocation_operator(const HermiteBasis& basis, double alpha) {
  const double a2 = alpha * alpha;
  Eigen::MatrixXd op = basis.d2;
  op -= (4.0 * a2 * basis.nodes).asDiagonal() * basis.d1;
  op += Eigen::MatrixXd(
      (2.0 * a2 * (2.0 * a2 * basis.nodes.array().square() - 1.0))
          .matrix()
          .asDiagonal());
  return op;
}

Eigen::VectorXd forcing_in_p_space(const SpectralState& state,
                                   const Forcing& forcing,
                                   const Eigen::VectorXd& exp_a2xi2, double t) {
  const int n = state.basis->n;
  Eigen::VectorXd f(n);
  for (int j = 0; j < n; ++j)
    f[j] = forcing(state.basis->nodes[j], t) * exp_a2xi2[j];
  return f;
}

}  // namespace

Eigen::VectorXd collocation_rhs(const SpectralState& state, double alpha_prime,
                                const Forcing& forcing) {
  const HermiteBasis& basis = *state.basis;
  const double a = state.alpha;
  Eigen::VectorXd rhs = collocation_operator(basis, a) * state.p;
  if (alpha_prime != 0.0)
    rhs += (2.0 * a * alpha_prime * basis.nodes.array().square() *
            state.p.array())
               .matrix();
  if (forcing) {
    const Eigen::VectorXd exp_a2xi2 =
        (a * a * basis.nodes.array().square()).exp();
    rhs += forcing_in_p_space(state, forcing, exp_a2xi2, state.t);
  }
  if (!rhs.allFinite())
    throw std::range_error("collocation_rhs: non-finite right-hand side");
  return rhs;
}

SpectralState euler_step(const SpectralState& state, double dt,
                         const Forcing& forcing) {
  SpectralState next = state;
  run_segment(next, 1, dt, forcing);
  return next;
}

SegmentOutcome run_segment(SpectralState& state, long m_steps, double dt,
                           const Forcing& forcing) {
  SegmentOutcome outcome;
  if (state.diverged) {
    outcome.diverged = true;
    outcome.step_of_divergence = 0;
    return outcome;
  }
  const HermiteBasis& basis = *state.basis;
  const Eigen::MatrixXd op = collocation_operator(basis, state.alpha);
  Eigen::VectorXd exp_a2xi2;
  if (forcing)
    exp_a2xi2 = (state.alpha * state.alpha * basis.nodes.array().square()).exp();
  Eigen::VectorXd rhs(basis.n);
  for (long step = 0; step < m_steps; ++step) {
    rhs.noalias() = op * state.p;
    if (forcing) rhs += forcing_in_p_space(state, forcing, exp_a2xi2, state.t);
    state.p += dt * rhs;
    state.t += dt;
    const double amax = state.p.cwiseAbs().maxCoeff();
    if (!(amax < kDivergenceSentinel)) {  // catches NaN as well
      state.diverged = true;
      state.diverged_step = step;
      outcome.diverged = true;
      outcome.step_of_divergence = step;
      return outcome;
    }
  }
  return outcome;
}

void switch_alpha(SpectralState& state, double alpha_new) {
  if (alpha_new == state.alpha) return;
  state.p = rescale_point_values(*state.basis, state.p, state.alpha, alpha_new);
  state.alpha = alpha_new;
}

Expansion state_expansion(const SpectralState& state) {
  const HermiteBasis& basis = *state.basis;
  NodalFunction nodal;
  nodal.alpha = state.alpha;
  nodal.values.resize(basis.n);
  for (int j = 0; j < basis.n; ++j)
    nodal.values[j] = barycentric_eval(basis.nodes, basis.bary, state.p,
                                       basis.nodes[j] / state.alpha);
  return pv_to_fc(basis, nodal);
}

Eigen::VectorXd galerkin_rhs(const Eigen::VectorXd& coeffs, double alpha,
                             double alpha_prime,
                             const Eigen::VectorXd& f_coeffs) {
  if (alpha == 0.0) throw std::domain_error("galerkin_rhs: alpha must be nonzero");
  if (f_coeffs.size() != coeffs.size())
    throw std::invalid_argument("galerkin_rhs: coefficient length mismatch");
  const int n = static_cast<int>(coeffs.size());
  const double lower = alpha_prime / (2.0 * alpha) + alpha * alpha;
  const double ratio = alpha_prime / alpha;
  Eigen::VectorXd out(n);
  for (int m = 0; m < n; ++m) {
    out[m] = (m + 1) * ratio * coeffs[m] + f_coeffs[m];
    if (m >= 2) out[m] += lower * coeffs[m - 2];
  }
  return out;
}

double galerkin_exact_coeff(int m, double alpha, double t) {
  if (m < 0 || m % 2 != 0)
    throw std::domain_error("galerkin_exact_coeff: m must be even (odd modes vanish)");
  const int h = m / 2;
  double value = std::sqrt(M_PI);
  for (int k = 1; k <= h; ++k) value *= alpha * alpha * t / k;
  return value;
}

double constant_alpha_series(double x, double t, double alpha, int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("constant_alpha_series: n_terms < 1");
  // Orthonormally scaled recurrence h_k = H_k / sqrt(2^k k!), which stays
  // of order exp(zeta^2/2) however many terms are requested; the raw H_2l
  // would overflow near l = 140.
  const double zeta = alpha * x;
  double h_prev = 0.0;
  double h = 1.0;  // h_0
  double sum = 0.0;
  double factor = 1.0;  // alpha^(2l) t^l / l! * sqrt(2^(2l) (2l)!)
  for (int l = 0, k = 0; l < n_terms; ++l) {
    sum += factor * h;
    factor *= 2.0 * alpha * alpha * t *
              std::sqrt((2.0 * l + 1.0) * (2.0 * l + 2.0)) / (l + 1.0);
    for (int step = 0; step < 2; ++step, ++k) {
      const double next = zeta * std::sqrt(2.0 / (k + 1.0)) * h -
                          std::sqrt(static_cast<double>(k) / (k + 1.0)) * h_prev;
      h_prev = h;
      h = next;
    }
  }
  return sum * std::exp(-zeta * zeta);
}

ErrorNorms error_norms(const SpectralState& state, const ScalarField& exact,
                       const Eigen::VectorXd& fine_grid) {
  const HermiteBasis& basis = *state.basis;
  ErrorNorms norms;
  double sum2 = 0.0;
  double sum2w = 0.0;
  const double a2 = state.alpha * state.alpha;
  for (int j = 0; j < basis.n; ++j) {
    const double xi = basis.nodes[j];
    const double u_num = state.p[j] * std::exp(-a2 * xi * xi);
    const double err = std::abs(exact(xi) - u_num);
    sum2 += err * err;
    sum2w += err * err * basis.weights[j];
  }
  norms.n1 = std::sqrt(sum2);
  norms.n3 = std::sqrt(sum2w);
  const Eigen::VectorXd u_grid =
      evaluate_hermite_function(state.p, basis, state.alpha, fine_grid);
  double max_err = 0.0;
  for (int i = 0; i < fine_grid.size(); ++i)
    max_err = std::max(max_err, std::abs(exact(fine_grid[i]) - u_grid[i]));
  norms.n2 = max_err;
  return norms;
}

Eigen::VectorXd default_fine_grid(int n) {
  const double half_width = n <= 10 ? 8.0 : 5.0;
  return Eigen::VectorXd::LinSpaced(2001, -half_width, half_width);
}

}  // namespace hsc
