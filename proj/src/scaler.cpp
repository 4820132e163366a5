#include "hsc/scaler.hpp"

#include <stdexcept>

namespace hsc {

FeatureScaler FeatureScaler::fit(const std::vector<Eigen::VectorXd>& rows) {
  if (rows.empty()) throw std::invalid_argument("FeatureScaler: empty corpus");
  FeatureScaler s;
  s.lo = rows.front();
  s.hi = rows.front();
  for (const auto& r : rows) {
    s.lo = s.lo.cwiseMin(r);
    s.hi = s.hi.cwiseMax(r);
  }
  return s;
}

Eigen::VectorXd FeatureScaler::transform(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double range = hi[i] - lo[i];
    out[i] = range > 0.0 ? 2.0 * (x[i] - lo[i]) / range - 1.0 : 0.0;
  }
  return out;
}

Eigen::VectorXd FeatureScaler::inverse(const Eigen::VectorXd& scaled) const {
  Eigen::VectorXd out(scaled.size());
  for (int i = 0; i < scaled.size(); ++i) {
    const double range = hi[i] - lo[i];
    out[i] = range > 0.0 ? lo[i] + 0.5 * (scaled[i] + 1.0) * range : lo[i];
  }
  return out;
}

}  // namespace hsc
