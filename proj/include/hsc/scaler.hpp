#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hsc {

/// Per-feature affine map onto [-1, 1], fitted on a training corpus and
/// applied at prediction time. Constant features map to 0.
struct FeatureScaler {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  static FeatureScaler fit(const std::vector<Eigen::VectorXd>& rows);

  Eigen::VectorXd transform(const Eigen::VectorXd& x) const;
  Eigen::VectorXd inverse(const Eigen::VectorXd& scaled) const;
};

}  // namespace hsc
