#include "hsc/svr.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsc {

namespace {

double rbf(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double gamma) {
  return std::exp(-gamma * (a - b).squaredNorm());
}

// KKT multiplier of one dual block: average gradient over its free variables,
// or the midpoint of the active-bound gradients when none are free.
double block_multiplier(const Eigen::VectorXd& beta, const Eigen::VectorXd& grad,
                        int begin, int end, double box) {
  double sum = 0.0;
  int free_count = 0;
  double upper = std::numeric_limits<double>::infinity();
  double lower = -upper;
  for (int i = begin; i < end; ++i) {
    if (beta[i] > 0.0 && beta[i] < box) {
      sum += grad[i];
      ++free_count;
    } else if (beta[i] <= 0.0) {
      upper = std::min(upper, grad[i]);
    } else {
      lower = std::max(lower, grad[i]);
    }
  }
  if (free_count > 0) return sum / free_count;
  return 0.5 * (upper + lower);
}

}  // namespace

SvrModel train_svr(const std::vector<TrainingSample>& corpus, SvrParams params) {
  if (corpus.empty()) throw std::invalid_argument("train_svr: empty corpus");
  const int l = static_cast<int>(corpus.size());
  const int dim = static_cast<int>(corpus.front().features.size());
  if (params.gamma <= 0.0) params.gamma = 1.0 / dim;
  if (!(params.nu > 0.0 && params.nu <= 1.0))
    throw std::invalid_argument("train_svr: nu must lie in (0, 1]");

  std::vector<Eigen::VectorXd> rows(l);
  for (int i = 0; i < l; ++i) rows[i] = corpus[i].features;
  const FeatureScaler scaler = FeatureScaler::fit(rows);
  Eigen::MatrixXd x(l, dim);
  Eigen::VectorXd y(l);
  for (int i = 0; i < l; ++i) {
    x.row(i) = scaler.transform(corpus[i].features).transpose();
    y[i] = corpus[i].target_alpha;
  }

  Eigen::MatrixXd kern(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j <= i; ++j)
      kern(i, j) = kern(j, i) = rbf(x.row(i), x.row(j), params.gamma);

  // Dual variables: beta[0..l) are alpha, beta[l..2l) are alpha*. The block
  // sums stay at C nu l / 2 each because working pairs share a block.
  const double box = params.C;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(2 * l);
  double budget = params.C * params.nu * l / 2.0;
  for (int i = 0; i < l && budget > 0.0; ++i) {
    const double v = std::min(budget, box);
    beta[i] = beta[i + l] = v;
    budget -= v;
  }

  // grad[i]      = f0(x_i) - y_i         (alpha block)
  // grad[i + l]  = -f0(x_i) + y_i        (alpha* block)
  // with f0(x) = sum_j (alpha_j - alpha*_j) k(x_j, x).
  Eigen::VectorXd delta = beta.head(l) - beta.tail(l);
  Eigen::VectorXd f0 = kern * delta;
  Eigen::VectorXd grad(2 * l);
  grad.head(l) = f0 - y;
  grad.tail(l) = y - f0;

  long iter = 0;
  for (; iter < params.max_iter; ++iter) {
    // Maximal violating pair per block: beta_i can grow while beta_j can
    // shrink, and optimality requires grad_i >= grad_j for all such pairs.
    int best_i = -1, best_j = -1;
    double best_violation = params.tol;
    for (int block = 0; block < 2; ++block) {
      const int begin = block * l;
      int i_min = -1, j_max = -1;
      double g_min = std::numeric_limits<double>::infinity();
      double g_max = -g_min;
      for (int k = begin; k < begin + l; ++k) {
        if (beta[k] < box && grad[k] < g_min) {
          g_min = grad[k];
          i_min = k;
        }
        if (beta[k] > 0.0 && grad[k] > g_max) {
          g_max = grad[k];
          j_max = k;
        }
      }
      if (i_min >= 0 && j_max >= 0 && g_max - g_min > best_violation) {
        best_violation = g_max - g_min;
        best_i = i_min;
        best_j = j_max;
      }
    }
    if (best_i < 0) break;  // KKT satisfied to tolerance

    const int i = best_i, j = best_j;
    const int ii = i % l, jj = j % l;
    double q = kern(ii, ii) + kern(jj, jj) - 2.0 * kern(ii, jj);
    if (q < 1e-12) q = 1e-12;
    double t = (grad[j] - grad[i]) / q;
    t = std::min(t, std::min(box - beta[i], beta[j]));
    beta[i] += t;
    beta[j] -= t;

    // Rank-one gradient update; the two blocks see opposite kernel signs.
    for (int k = 0; k < l; ++k) {
      const double dk = t * (kern(k, ii) - kern(k, jj));
      const double signed_dk = (i < l) ? dk : -dk;
      grad[k] += signed_dk;
      grad[k + l] -= signed_dk;
    }
  }
  if (iter >= params.max_iter)
    throw std::runtime_error("train_svr: SMO did not converge within the iteration budget");

  const double lambda1 = block_multiplier(beta, grad, 0, l, box);
  const double lambda2 = block_multiplier(beta, grad, l, 2 * l, box);

  SvrModel model;
  model.bias = 0.5 * (lambda2 - lambda1);
  model.epsilon = -0.5 * (lambda1 + lambda2);
  model.kernel_gamma = params.gamma;
  model.nu = params.nu;
  model.box_bound = box;
  model.scaler = scaler;
  model.train_size = l;
  model.iterations = iter;

  delta = beta.head(l) - beta.tail(l);
  model.dual_sum = delta.sum();
  std::vector<int> sv;
  for (int i = 0; i < l; ++i)
    if (std::abs(delta[i]) > 1e-12) sv.push_back(i);
  model.support_vectors.resize(sv.size(), dim);
  model.dual_coeffs.resize(sv.size());
  for (size_t s = 0; s < sv.size(); ++s) {
    model.support_vectors.row(s) = x.row(sv[s]);
    model.dual_coeffs[s] = delta[sv[s]];
  }
  return model;
}

double predict_svr(const SvrModel& model, const Eigen::VectorXd& features) {
  if (features.size() != model.scaler.lo.size())
    throw std::invalid_argument("predict_svr: feature length mismatch");
  const Eigen::VectorXd xs = model.scaler.transform(features);
  double sum = model.bias;
  for (int s = 0; s < model.dual_coeffs.size(); ++s)
    sum += model.dual_coeffs[s] *
           rbf(model.support_vectors.row(s).transpose(), xs, model.kernel_gamma);
  return sum;
}

}  // namespace hsc
