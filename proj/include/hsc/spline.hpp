#pragma once

#include <Eigen/Dense>

namespace hsc {

/// Clamped cubic spline on [-c, c] with M+2 equispaced break points, zero
/// value and zero slope at both endpoints, and prescribed interior values.
/// Extended by zero outside the support, which makes it globally C^1.
class CubicSpline {
 public:
  /// Builds the clamped spline through (break points, [0, interior..., 0])
  /// with S'(+-c) = 0, via the standard tridiagonal second-derivative system.
  static CubicSpline clamped(double support_halfwidth,
                             const Eigen::VectorXd& interior_values);

  double operator()(double x) const;

  double support_halfwidth() const { return c_; }
  const Eigen::VectorXd& break_values() const { return y_; }
  int interior_count() const { return static_cast<int>(y_.size()) - 2; }
  double max_interior_value() const;

 private:
  double c_ = 0.0;
  double h_ = 0.0;       // break spacing
  Eigen::VectorXd y_;    // values at all break points, endpoints included
  Eigen::VectorXd sig_;  // second derivatives at the break points
};

}  // namespace hsc
