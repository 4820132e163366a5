#include "hsc/transform.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace hsc {

namespace {

Eigen::VectorXd coeff_normalizers(int n) {
  // 1 / (2^m m! sqrt(pi)), m = 0..n-1
  Eigen::VectorXd norm(n);
  double factor = 1.0 / std::sqrt(M_PI);
  for (int m = 0; m < n; ++m) {
    norm[m] = factor;
    factor /= 2.0 * (m + 1);
  }
  return norm;
}

struct CachedTransform {
  Eigen::MatrixXd matrix;
  double condition = 0.0;
};

std::shared_mutex g_cache_mutex;
std::map<std::tuple<double, double, int>, std::shared_ptr<const CachedTransform>>
    g_cache;

double round12(double x) {
  // cache key rounded to 12 significant digits
  if (x == 0.0) return 0.0;
  const double mag = std::pow(10.0, 11 - std::floor(std::log10(std::abs(x))));
  return std::round(x * mag) / mag;
}

std::shared_ptr<const CachedTransform> alpha_transform(const HermiteBasis& basis,
                                                       double alpha_src,
                                                       double alpha_dst) {
  const auto key = std::make_tuple(round12(alpha_src), round12(alpha_dst), basis.n);
  {
    std::shared_lock lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  const int n = basis.n;
  const double ratio = alpha_src / alpha_dst;
  // T(m,l) = 1/(ratio 2^m m! sqrt(pi)) sum_j H_l(xi_j) H_m(xi_j/ratio) w_j
  Eigen::MatrixXd target_vandermonde(n, n);
  for (int j = 0; j < n; ++j)
    target_vandermonde.col(j) = hermite_eval_all(n - 1, basis.nodes[j] / ratio);
  const Eigen::VectorXd norm = coeff_normalizers(n);
  auto entry = std::make_shared<CachedTransform>();
  entry->matrix.resize(n, n);
  for (int m = 0; m < n; ++m) {
    for (int l = 0; l < n; ++l) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j)
        sum += basis.vandermonde(l, j) * target_vandermonde(m, j) * basis.weights[j];
      entry->matrix(m, l) = norm[m] / ratio * sum;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(entry->matrix);
  const double smin = svd.singularValues()[n - 1];
  entry->condition = smin > 0.0 ? svd.singularValues()[0] / smin
                                : std::numeric_limits<double>::infinity();
  {
    std::unique_lock lock(g_cache_mutex);
    return g_cache.emplace(key, entry).first->second;
  }
}

}  // namespace

Expansion pv_to_fc(const HermiteBasis& basis, const NodalFunction& nodal) {
  if (nodal.values.size() != basis.n)
    throw std::invalid_argument("pv_to_fc: sample count mismatch");
  const int n = basis.n;
  const Eigen::VectorXd norm = coeff_normalizers(n);
  Expansion out;
  out.alpha = nodal.alpha;
  out.coeffs = norm.asDiagonal() * (basis.vandermonde *
                                    basis.weights.cwiseProduct(nodal.values));
  if (!out.coeffs.allFinite())
    throw std::range_error(
        "pv_to_fc: non-finite coefficient (exp(+xi^2) sample out of range)");
  return out;
}

NodalFunction fc_to_pv(const HermiteBasis& basis, const Expansion& expansion) {
  if (expansion.coeffs.size() != basis.n)
    throw std::invalid_argument("fc_to_pv: coefficient count mismatch");
  NodalFunction out;
  out.alpha = expansion.alpha;
  out.values = basis.vandermonde.transpose() * expansion.coeffs;
  return out;
}

AlphaChangeResult change_alpha_fc(const HermiteBasis& basis,
                                  const Expansion& expansion, double new_alpha) {
  if (!(expansion.alpha > 0.0) || !(new_alpha > 0.0))
    throw std::invalid_argument("change_alpha_fc: alpha must be positive");
  if (new_alpha == expansion.alpha) {
    AlphaChangeResult result;
    result.expansion = expansion;
    result.condition_estimate = 1.0;
    return result;
  }
  auto entry = alpha_transform(basis, expansion.alpha, new_alpha);
  AlphaChangeResult result;
  result.expansion.alpha = new_alpha;
  result.expansion.coeffs = entry->matrix * expansion.coeffs;
  result.condition_estimate = entry->condition;
  result.ill_conditioned = entry->condition > 1e8;
  return result;
}

Eigen::VectorXd rescale_point_values(const HermiteBasis& basis,
                                     const Eigen::VectorXd& p_old_at_nodes,
                                     double alpha_old, double alpha_new) {
  if (p_old_at_nodes.size() != basis.n)
    throw std::invalid_argument("rescale_point_values: sample count mismatch");
  const double shift = alpha_new * alpha_new - alpha_old * alpha_old;
  const double max_xi2 = basis.nodes.cwiseAbs2().maxCoeff();
  if (shift * max_xi2 > 700.0)
    throw std::overflow_error("rescale_point_values: alpha jump too large");
  return p_old_at_nodes.array() *
         (shift * basis.nodes.array().square()).exp();
}

Eigen::VectorXd evaluate_hermite_function(const Eigen::VectorXd& p_at_nodes,
                                          const HermiteBasis& basis, double alpha,
                                          const Eigen::VectorXd& x_grid) {
  Eigen::VectorXd out(x_grid.size());
  for (int i = 0; i < x_grid.size(); ++i) {
    const double x = x_grid[i];
    const double p = barycentric_eval(basis.nodes, basis.bary, p_at_nodes, x);
    out[i] = p * std::exp(-alpha * alpha * x * x);
  }
  return out;
}

void clear_alpha_transform_cache() {
  std::unique_lock lock(g_cache_mutex);
  g_cache.clear();
}

}  // namespace hsc
