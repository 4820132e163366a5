#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hsc/training.hpp"

namespace hsc {

/// Linear least-squares baseline alpha* = w . features, fitted by minimizing
/// sum_k (V_k . w - alpha_k)^2. Rank deficiency of the Gram matrix V^T V is a
/// diagnostic outcome, not an error: a minimum-norm solution is returned with
/// the flag set.
struct LsqModel {
  Eigen::VectorXd weight_vector;
  int rank = 0;
  double gram_det_magnitude = 0.0;  // product of Gram eigenvalues
  bool rank_deficient = false;
  double train_rmse = 0.0;
};

LsqModel train_lsq(const std::vector<TrainingSample>& corpus);

double predict_lsq(const LsqModel& model, const Eigen::VectorXd& features);

}  // namespace hsc
