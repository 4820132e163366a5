#pragma once

#include <Eigen/Dense>

#include "hsc/hermite.hpp"

namespace hsc {

/// Hermite-function expansion: v(x) = w_alpha(x) * sum_l coeffs[l] H_l(alpha x)
/// with w_alpha(x) = exp(-(alpha x)^2). The coefficients follow the quadrature
/// normalization of pv_to_fc (coeff 1 for a pure Gaussian of matching width).
struct Expansion {
  double alpha = 1.0;
  Eigen::VectorXd coeffs;
};

/// Quadrature-ready point values of a function v in the alpha-scaled basis:
/// values[j] = v(xi_j / alpha) * exp(+xi_j^2), i.e. the polynomial part of v
/// sampled at the nodes.
struct NodalFunction {
  double alpha = 1.0;
  Eigen::VectorXd values;
};

/// Fourier coefficients from quadrature-ready point values:
///   coeffs[m] = 1/(2^m m! sqrt(pi)) * sum_j values[j] H_m(xi_j) w_j.
/// Exact when the polynomial part has degree < 2n - m.
/// Throws std::range_error on non-finite output (exp(+xi^2) overflow).
Expansion pv_to_fc(const HermiteBasis& basis, const NodalFunction& nodal);

/// Inverse of pv_to_fc: values[j] = sum_l coeffs[l] H_l(xi_j). The round trip
/// pv_to_fc(fc_to_pv(e)) is the identity up to quadrature rounding.
NodalFunction fc_to_pv(const HermiteBasis& basis, const Expansion& expansion);

struct AlphaChangeResult {
  Expansion expansion;
  double condition_estimate = 0.0;
  bool ill_conditioned = false;  // condition estimate above 1e8
};

/// Re-express an expansion in the basis scaled by new_alpha. The transform is
/// an n x n matrix built by Gauss-Hermite quadrature and cached per
/// (alpha_src, alpha_dst, n). A structured warning flag is set instead of
/// throwing when the matrix is ill-conditioned (alpha ratio unresolvable).
AlphaChangeResult change_alpha_fc(const HermiteBasis& basis,
                                  const Expansion& expansion, double new_alpha);

/// Point-value alpha switch used by the time stepper:
///   p_new[j] = p_old[j] * exp((alpha_new^2 - alpha_old^2) xi_j^2).
/// Throws std::overflow_error when the exponent would exceed the double range.
Eigen::VectorXd rescale_point_values(const HermiteBasis& basis,
                                     const Eigen::VectorXd& p_old_at_nodes,
                                     double alpha_old, double alpha_new);

/// u(x) = p(x) exp(-(alpha x)^2) on a grid, where p interpolates p_at_nodes
/// barycentrically at the basis nodes.
Eigen::VectorXd evaluate_hermite_function(const Eigen::VectorXd& p_at_nodes,
                                          const HermiteBasis& basis, double alpha,
                                          const Eigen::VectorXd& x_grid);

/// Drops every cached alpha-change matrix (mainly for tests).
void clear_alpha_transform_cache();

}  // namespace hsc
