#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "hsc/scaler.hpp"
#include "hsc/training.hpp"

namespace hsc {

/// Feed-forward network: tanh hidden layers, one linear output neuron.
struct MlpModel {
  std::vector<int> layer_sizes;       // input, hidden..., 1
  std::vector<Eigen::MatrixXd> weights;  // weights[l]: sizes[l+1] x sizes[l]
  std::vector<Eigen::VectorXd> biases;
  FeatureScaler scaler;
  double final_mse = 0.0;
  int epochs = 0;
  uint64_t seed = 0;
};

struct MlpTrainConfig {
  int max_epochs = 500;
  double target_mse = 1e-6;
  uint64_t seed = 0;
  double initial_lambda = 1e-3;
  int max_restarts = 5;
};

/// Full-batch Levenberg-Marquardt on the sum-of-squares loss with a dense
/// residual Jacobian assembled by per-sample backpropagation. The damping
/// factor grows tenfold on rejected steps and shrinks tenfold on accepted
/// ones; training stops at target_mse or the epoch budget. Deterministic
/// under the seed; restarts with a derived seed on non-finite loss.
MlpModel train_mlp(const std::vector<TrainingSample>& corpus,
                   const std::vector<int>& hidden_sizes, MlpTrainConfig config);

double predict_mlp(const MlpModel& model, const Eigen::VectorXd& features);

/// Residuals d(output)/d(parameters) for one scaled input, packed in the
/// canonical parameter order (per layer: row-major weights, then biases).
/// Exposed for the finite-difference Jacobian check.
Eigen::VectorXd mlp_parameter_gradient(const MlpModel& model,
                                       const Eigen::VectorXd& scaled_input);

/// Number of trainable parameters.
int mlp_parameter_count(const MlpModel& model);

/// Reads/writes the packed parameter vector (canonical order as above).
Eigen::VectorXd mlp_get_parameters(const MlpModel& model);
void mlp_set_parameters(MlpModel& model, const Eigen::VectorXd& theta);

}  // namespace hsc
