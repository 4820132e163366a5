#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "hsc/hermite.hpp"
#include "hsc/transform.hpp"

namespace hsc {

/// Forcing term f(x, t) of the heat equation u_t - u_xx = f.
using Forcing = std::function<double(double, double)>;

/// Node values of any run are declared divergent past this magnitude.
inline constexpr double kDivergenceSentinel = 1e10;

/// Collocation state: the polynomial part p of u_N = p * exp(-(alpha x)^2)
/// sampled at the basis nodes, plus the current scaling factor and time.
struct SpectralState {
  const HermiteBasis* basis = nullptr;
  Eigen::VectorXd p;
  double alpha = 0.5;
  double t = 0.0;
  bool diverged = false;
  long diverged_step = -1;
};

struct SegmentOutcome {
  bool diverged = false;
  long step_of_divergence = -1;  // index within the segment
};

// --- exact solutions and forcing -------------------------------------------

/// alpha(t) = 1/(2 sqrt(t+1)) of the homogeneous exact solution.
double exact_alpha_homogeneous(double t);
/// u(x,t) = 2 alpha(t) exp(-(alpha(t) x)^2), solving u_t = u_xx.
double exact_homogeneous(double x, double t);

/// alpha(t) = sqrt(2)/sqrt(3t+1) of the manufactured forced solution.
double exact_alpha_nonhomogeneous(double t);
/// u(x,t) = (cos(xt/2) + 2 (t sin x)^2) exp(-(alpha(t) x)^2).
double exact_nonhomogeneous(double x, double t);
/// Closed-form f = u_t - u_xx for the manufactured solution above.
double forcing_nonhomogeneous(double x, double t);

// --- collocation time stepping ----------------------------------------------

/// dp/dt at the nodes:
///   D2 p - 4 a^2 xi (D1 p) + 2 a^2 (2 (a xi)^2 - 1) p + 2 a a' xi^2 p
///   + f(xi, t) exp(+(a xi)^2).
/// The alpha' term carries the sign that keeps p == alpha(t) an exact solution
/// of the homogeneous problem.
Eigen::VectorXd collocation_rhs(const SpectralState& state, double alpha_prime,
                                const Forcing& forcing = nullptr);

/// One forward Euler step with alpha held constant (alpha' = 0).
SpectralState euler_step(const SpectralState& state, double dt,
                         const Forcing& forcing = nullptr);

/// m_steps forward Euler steps at constant alpha, in place. Stops early and
/// flags the state when any node value passes the divergence sentinel.
SegmentOutcome run_segment(SpectralState& state, long m_steps, double dt,
                           const Forcing& forcing = nullptr);

/// Re-expands the state in the basis scaled by alpha_new; u_N is preserved at
/// the nodes and t is unchanged.
void switch_alpha(SpectralState& state, double alpha_new);

/// Expansion of u_N in the state's own alpha-basis. The polynomial part is
/// evaluated barycentrically at xi_j/alpha before quadrature.
Expansion state_expansion(const SpectralState& state);

// --- Galerkin reference ------------------------------------------------------

/// d u_hat_m/dt = (a'/(2a) + a^2) u_hat_{m-2} + (m+1)(a'/a) u_hat_m + f_hat_m,
/// with u_hat_{m-2} = 0 for m < 2. Throws std::domain_error for alpha = 0.
Eigen::VectorXd galerkin_rhs(const Eigen::VectorXd& coeffs, double alpha,
                             double alpha_prime, const Eigen::VectorXd& f_coeffs);

/// Closed-form constant-alpha coefficient sqrt(pi) alpha^m t^(m/2) / (m/2)!
/// (m even; odd coefficients vanish identically and are rejected).
double galerkin_exact_coeff(int m, double alpha, double t);

/// Truncated series w_alpha(x) sum_l alpha^(2l) t^l/l! H_2l(alpha x); valid
/// for t < 1 (unit convergence radius).
double constant_alpha_series(double x, double t, double alpha, int n_terms);

// --- error norms -------------------------------------------------------------

struct ErrorNorms {
  double n1 = 0.0;  // sqrt(sum_j |u - u_N|^2) at the nodes
  double n2 = 0.0;  // max |u - u_N| on a fine grid
  double n3 = 0.0;  // sqrt(sum_j |u - u_N|^2 w_j)
};

using ScalarField = std::function<double(double)>;

/// Norms of u - u_N with u given on nodes and fine grid by `exact`.
ErrorNorms error_norms(const SpectralState& state, const ScalarField& exact,
                       const Eigen::VectorXd& fine_grid);

/// 2001 equispaced points on [-8, 8] for n <= 10, on [-5, 5] otherwise.
Eigen::VectorXd default_fine_grid(int n);

}  // namespace hsc
