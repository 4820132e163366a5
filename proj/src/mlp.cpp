#include "hsc/mlp.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "hsc/training.hpp"

namespace hsc {

namespace {

// Forward pass keeping the per-layer activations (a[0] = input).
double forward(const MlpModel& m, const Eigen::VectorXd& scaled_input,
               std::vector<Eigen::VectorXd>* activations = nullptr) {
  Eigen::VectorXd a = scaled_input;
  if (activations) {
    activations->clear();
    activations->push_back(a);
  }
  const size_t layers = m.weights.size();
  for (size_t l = 0; l < layers; ++l) {
    Eigen::VectorXd z = m.weights[l] * a + m.biases[l];
    a = (l + 1 < layers) ? z.array().tanh().matrix() : z;
    if (activations) activations->push_back(a);
  }
  return a[0];
}

void random_init(MlpModel& m, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (size_t l = 0; l < m.weights.size(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(m.layer_sizes[l]));
    for (int r = 0; r < m.weights[l].rows(); ++r)
      for (int c = 0; c < m.weights[l].cols(); ++c)
        m.weights[l](r, c) = uniform_draw(rng, -bound, bound);
    for (int r = 0; r < m.biases[l].size(); ++r)
      m.biases[l][r] = uniform_draw(rng, -bound, bound);
  }
}

}  // namespace

int mlp_parameter_count(const MlpModel& m) {
  int count = 0;
  for (size_t l = 0; l < m.weights.size(); ++l)
    count += static_cast<int>(m.weights[l].size() + m.biases[l].size());
  return count;
}

Eigen::VectorXd mlp_get_parameters(const MlpModel& m) {
  Eigen::VectorXd theta(mlp_parameter_count(m));
  int at = 0;
  for (size_t l = 0; l < m.weights.size(); ++l) {
    for (int r = 0; r < m.weights[l].rows(); ++r)
      for (int c = 0; c < m.weights[l].cols(); ++c) theta[at++] = m.weights[l](r, c);
    for (int r = 0; r < m.biases[l].size(); ++r) theta[at++] = m.biases[l][r];
  }
  return theta;
}

void mlp_set_parameters(MlpModel& m, const Eigen::VectorXd& theta) {
  int at = 0;
  for (size_t l = 0; l < m.weights.size(); ++l) {
    for (int r = 0; r < m.weights[l].rows(); ++r)
      for (int c = 0; c < m.weights[l].cols(); ++c) m.weights[l](r, c) = theta[at++];
    for (int r = 0; r < m.biases[l].size(); ++r) m.biases[l][r] = theta[at++];
  }
}

Eigen::VectorXd mlp_parameter_gradient(const MlpModel& m,
                                       const Eigen::VectorXd& scaled_input) {
  std::vector<Eigen::VectorXd> a;
  forward(m, scaled_input, &a);
  const size_t layers = m.weights.size();

  // delta[l] = d(output)/d(pre-activation of layer l); output layer is linear.
  std::vector<Eigen::VectorXd> delta(layers);
  delta[layers - 1] = Eigen::VectorXd::Ones(1);
  for (size_t l = layers - 1; l > 0; --l) {
    const Eigen::VectorXd back = m.weights[l].transpose() * delta[l];
    delta[l - 1] = back.cwiseProduct(
        (1.0 - a[l].array().square()).matrix());  // tanh' = 1 - tanh^2
  }

  Eigen::VectorXd grad(mlp_parameter_count(m));
  int at = 0;
  for (size_t l = 0; l < layers; ++l) {
    for (int r = 0; r < m.weights[l].rows(); ++r)
      for (int c = 0; c < m.weights[l].cols(); ++c)
        grad[at++] = delta[l][r] * a[l][c];
    for (int r = 0; r < m.biases[l].size(); ++r) grad[at++] = delta[l][r];
  }
  return grad;
}

MlpModel train_mlp(const std::vector<TrainingSample>& corpus,
                   const std::vector<int>& hidden_sizes, MlpTrainConfig config) {
  if (corpus.empty()) throw std::invalid_argument("train_mlp: empty corpus");
  const int l_count = static_cast<int>(corpus.size());
  const int dim = static_cast<int>(corpus.front().features.size());

  std::vector<Eigen::VectorXd> rows(l_count);
  for (int i = 0; i < l_count; ++i) rows[i] = corpus[i].features;
  const FeatureScaler scaler = FeatureScaler::fit(rows);
  Eigen::MatrixXd x(l_count, dim);
  Eigen::VectorXd y(l_count);
  for (int i = 0; i < l_count; ++i) {
    x.row(i) = scaler.transform(corpus[i].features).transpose();
    y[i] = corpus[i].target_alpha;
  }

  MlpModel model;
  model.layer_sizes.push_back(dim);
  for (int h : hidden_sizes) model.layer_sizes.push_back(h);
  model.layer_sizes.push_back(1);
  const int layers = static_cast<int>(model.layer_sizes.size()) - 1;
  model.weights.resize(layers);
  model.biases.resize(layers);
  for (int l = 0; l < layers; ++l) {
    model.weights[l].resize(model.layer_sizes[l + 1], model.layer_sizes[l]);
    model.biases[l].resize(model.layer_sizes[l + 1]);
  }
  model.scaler = scaler;
  model.seed = config.seed;

  const int p = mlp_parameter_count(model);
  Eigen::VectorXd residuals(l_count);
  Eigen::MatrixXd jac(l_count, p);

  auto compute_residuals = [&](MlpModel& m, Eigen::VectorXd& r) {
    for (int i = 0; i < l_count; ++i)
      r[i] = forward(m, x.row(i).transpose()) - y[i];
    return r.squaredNorm() / l_count;  // MSE
  };

  uint64_t seed = config.seed;
  for (int restart = 0; restart <= config.max_restarts; ++restart) {
    random_init(model, seed);
    double mse = compute_residuals(model, residuals);
    if (!std::isfinite(mse)) {
      seed = derive_seed(seed, 7);
      continue;
    }
    double lambda = config.initial_lambda;
    int epoch = 0;
    for (; epoch < config.max_epochs && mse > config.target_mse; ++epoch) {
      for (int i = 0; i < l_count; ++i)
        jac.row(i) = mlp_parameter_gradient(model, x.row(i).transpose()).transpose();
      const Eigen::MatrixXd jtj = jac.transpose() * jac;
      const Eigen::VectorXd jtr = jac.transpose() * residuals;
      const Eigen::VectorXd theta = mlp_get_parameters(model);

      bool accepted = false;
      while (lambda <= 1e12) {
        Eigen::MatrixXd damped = jtj;
        damped.diagonal().array() += lambda;
        const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
        MlpModel trial = model;
        mlp_set_parameters(trial, theta + step);
        Eigen::VectorXd trial_res(l_count);
        const double trial_mse = compute_residuals(trial, trial_res);
        if (std::isfinite(trial_mse) && trial_mse < mse) {
          model = std::move(trial);
          residuals = std::move(trial_res);
          mse = trial_mse;
          lambda = std::max(lambda / 10.0, 1e-12);
          accepted = true;
          break;
        }
        lambda *= 10.0;
      }
      if (!accepted) break;  // damping exhausted: local minimum reached
    }
    if (std::isfinite(mse)) {
      model.final_mse = mse;
      model.epochs = epoch;
      model.seed = seed;
      return model;
    }
    seed = derive_seed(seed, 7);
  }
  throw std::runtime_error("train_mlp: non-finite loss after all restarts");
}

double predict_mlp(const MlpModel& model, const Eigen::VectorXd& features) {
  if (features.size() != model.scaler.lo.size())
    throw std::invalid_argument("predict_mlp: feature length mismatch");
  return forward(model, model.scaler.transform(features));
}

}  // namespace hsc
