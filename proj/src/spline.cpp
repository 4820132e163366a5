#include "hsc/spline.hpp"

#include <cmath>
#include <stdexcept>

namespace hsc {

CubicSpline CubicSpline::clamped(double support_halfwidth,
                                 const Eigen::VectorXd& interior_values) {
  if (!(support_halfwidth > 0.0))
    throw std::invalid_argument("CubicSpline: support halfwidth must be positive");
  const int m = static_cast<int>(interior_values.size());
  if (m < 1) throw std::invalid_argument("CubicSpline: need at least one interior value");

  CubicSpline s;
  s.c_ = support_halfwidth;
  const int last = m + 1;  // break points 0..m+1
  s.h_ = 2.0 * support_halfwidth / last;
  s.y_.resize(m + 2);
  s.y_[0] = 0.0;
  s.y_.segment(1, m) = interior_values;
  s.y_[last] = 0.0;

  // Tridiagonal system for the second derivatives with S'(-c) = S'(c) = 0.
  const double h = s.h_;
  Eigen::VectorXd diag(m + 2), rhs(m + 2), sub(m + 2);
  diag[0] = 2.0 * h;
  rhs[0] = 6.0 * ((s.y_[1] - s.y_[0]) / h);
  for (int i = 1; i <= last - 1; ++i) {
    diag[i] = 4.0 * h;
    rhs[i] = 6.0 * ((s.y_[i + 1] - s.y_[i]) / h - (s.y_[i] - s.y_[i - 1]) / h);
  }
  diag[last] = 2.0 * h;
  rhs[last] = 6.0 * (-(s.y_[last] - s.y_[last - 1]) / h);

  // Thomas algorithm; every off-diagonal entry equals h.
  sub[0] = 0.0;
  for (int i = 1; i <= last; ++i) {
    const double w = h / diag[i - 1];
    diag[i] -= w * h;
    rhs[i] -= w * rhs[i - 1];
  }
  s.sig_.resize(m + 2);
  s.sig_[last] = rhs[last] / diag[last];
  for (int i = last - 1; i >= 0; --i)
    s.sig_[i] = (rhs[i] - h * s.sig_[i + 1]) / diag[i];
  return s;
}

double CubicSpline::operator()(double x) const {
  if (x <= -c_ || x >= c_) return 0.0;
  const int last = static_cast<int>(y_.size()) - 1;
  int i = static_cast<int>((x + c_) / h_);
  if (i >= last) i = last - 1;
  const double xl = -c_ + i * h_;
  const double xr = xl + h_;
  const double dl = x - xl;
  const double dr = xr - x;
  return sig_[i] * dr * dr * dr / (6.0 * h_) + sig_[i + 1] * dl * dl * dl / (6.0 * h_) +
         (y_[i] / h_ - sig_[i] * h_ / 6.0) * dr +
         (y_[i + 1] / h_ - sig_[i + 1] * h_ / 6.0) * dl;
}

double CubicSpline::max_interior_value() const {
  return y_.segment(1, interior_count()).cwiseAbs().maxCoeff();
}

}  // namespace hsc
