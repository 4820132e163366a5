#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hsc {

/// Physicists' Hermite polynomial H_n(zeta) by the three-term recurrence
/// H_{n+1} = 2*zeta*H_n - 2*n*H_{n-1}, H_0 = 1, H_1 = 2*zeta.
/// Returns 0 for n < 0 (the usual convention for out-of-range indices).
double hermite_eval(int n, double zeta);

/// H_0(zeta) .. H_nmax(zeta) in a single recurrence pass.
Eigen::VectorXd hermite_eval_all(int n_max, double zeta);

/// H_n and H_{n-1} evaluated with dynamic rescaling so that large n does not
/// overflow. On return, H_n = hn * exp(log_scale) and likewise for hnm1.
void hermite_eval_scaled(int n, double zeta, double& hn, double& hnm1,
                         double& log_scale);

/// log|H'_n(zeta)| together with the sign of H'_n(zeta); uses H'_n = 2n H_{n-1}.
double hermite_log_abs_deriv(int n, double zeta, int& sign);

/// The n real zeros of H_n, ascending. Eigenvalues of the Jacobi matrix
/// (Golub-Welsch) polished by Newton iterations until |H_n/H'_n| < 1e-14.
/// Throws std::runtime_error if the polish fails to converge.
std::vector<double> compute_nodes(int n);

/// Gauss-Hermite weights w_j = sqrt(pi) 2^{n+1} n! / H'_n(xi_j)^2, evaluated
/// in log space so that n in the hundreds stays finite.
std::vector<double> compute_weights(int n, const std::vector<double>& nodes);

/// Admissible range of the Gaussian scaling factor for a basis of size n.
struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double a) const { return a >= lo && a <= hi; }
  double clamp(double a) const { return a < lo ? lo : (a > hi ? hi : a); }
};

/// Immutable bundle of the spectral machinery for a fixed number of nodes:
/// zeros of H_n, quadrature weights, collocation differentiation matrices,
/// barycentric weights and the Hermite-Vandermonde matrix H_m(xi_j).
/// Safe to share across threads once built.
struct HermiteBasis {
  int n = 0;
  Eigen::VectorXd nodes;        // ascending, antisymmetric
  Eigen::VectorXd weights;      // positive, sum = sqrt(pi)
  Eigen::MatrixXd d1;           // first-derivative collocation matrix
  Eigen::MatrixXd d2;           // d1 * d1
  Eigen::VectorXd bary;         // barycentric weights, max |.| = 1
  Eigen::MatrixXd vandermonde;  // (m, j) -> H_m(xi_j), m = 0..n-1

  static HermiteBasis build(int n);

  /// Heuristic interval of scaling factors this basis can resolve: the
  /// Gaussian must decay noticeably inside the node range (lower bound) and
  /// must keep ceil(n/2) nodes inside its numerical support while staying
  /// above machine epsilon at the outermost node (upper bound).
  AlphaInterval admissible_alpha() const;
};

/// Sum_j q(xi_j) w_j ~ integral of q(x) exp(-x^2) over the real line; exact
/// to rounding for polynomials q of degree < 2n. Mirrored nodes are paired in
/// the sum so odd integrands cancel exactly.
double gauss_hermite_integrate(const HermiteBasis& basis,
                               const Eigen::VectorXd& f_at_nodes);

/// (D1, D2) for the given nodes; diagonal d1_jj = xi_j, off-diagonal entries
/// from ratios of H'_n evaluated in log space, D2 = D1*D1.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> diff_matrices(
    int n, const std::vector<double>& nodes);

/// Interpolant through (nodes_j, values_j) evaluated at x with the second
/// barycentric formula. Exact at the nodes.
double barycentric_eval(const Eigen::VectorXd& nodes, const Eigen::VectorXd& bary,
                        const Eigen::VectorXd& values, double x);

}  // namespace hsc
