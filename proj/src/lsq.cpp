#include "hsc/lsq.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsc {

LsqModel train_lsq(const std::vector<TrainingSample>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("train_lsq: empty corpus");
  const int k = static_cast<int>(corpus.size());
  const int n = static_cast<int>(corpus.front().features.size());
  Eigen::MatrixXd v(k, n);
  Eigen::VectorXd alpha(k);
  for (int i = 0; i < k; ++i) {
    v.row(i) = corpus[i].features.transpose();
    alpha[i] = corpus[i].target_alpha;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sing = svd.singularValues();
  const double threshold = sing.size() > 0
                               ? sing[0] * std::max(k, n) *
                                     std::numeric_limits<double>::epsilon()
                               : 0.0;

  LsqModel model;
  model.rank = 0;
  for (int i = 0; i < sing.size(); ++i)
    if (sing[i] > threshold) ++model.rank;
  model.rank_deficient = model.rank < n;

  // det(V^T V) = product of the n squared singular values of V.
  double det = 1.0;
  for (int i = 0; i < n; ++i) {
    const double s = i < sing.size() ? sing[i] : 0.0;
    det *= s * s;
  }
  model.gram_det_magnitude = det;

  svd.setThreshold(std::max(k, n) * std::numeric_limits<double>::epsilon());
  model.weight_vector = svd.solve(alpha);  // minimum-norm solution
  model.train_rmse = std::sqrt((v * model.weight_vector - alpha).squaredNorm() / k);
  return model;
}

double predict_lsq(const LsqModel& model, const Eigen::VectorXd& features) {
  if (features.size() != model.weight_vector.size())
    throw std::invalid_argument("predict_lsq: feature length mismatch");
  return model.weight_vector.dot(features);
}

}  // namespace hsc
