#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hsc/scaler.hpp"
#include "hsc/training.hpp"

namespace hsc {

struct SvrParams {
  double nu = 0.5;
  double C = 1.0;
  double gamma = 0.0;  // 0 selects 1/num_features
  double tol = 1e-6;
  long max_iter = 2000000;
};

/// nu-support-vector regressor with RBF kernel k(x,y) = exp(-gamma |x-y|^2),
/// trained on [-1,1]-scaled features by a two-variable SMO ascent.
struct SvrModel {
  Eigen::MatrixXd support_vectors;  // scaled, one per row
  Eigen::VectorXd dual_coeffs;      // alpha_i - alpha*_i per support vector
  double bias = 0.0;
  double epsilon = 0.0;  // tube half-width recovered from the KKT conditions
  double kernel_gamma = 0.0;
  double nu = 0.0;
  double box_bound = 0.0;  // per-variable upper bound of the dual
  FeatureScaler scaler;
  int train_size = 0;
  long iterations = 0;
  double dual_sum = 0.0;  // sum of dual coefficients over all training points
};

/// Solves the nu-SVR dual to KKT tolerance params.tol. Working pairs are the
/// maximal violating pair within each of the two dual blocks, shrinking
/// disabled. Throws std::runtime_error if the iteration budget is exhausted.
SvrModel train_svr(const std::vector<TrainingSample>& corpus, SvrParams params);

double predict_svr(const SvrModel& model, const Eigen::VectorXd& features);

}  // namespace hsc
