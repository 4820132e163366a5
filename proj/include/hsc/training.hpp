#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <vector>

#include "hsc/hermite.hpp"
#include "hsc/spline.hpp"

namespace hsc {

enum class Representation { PV, FC };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct TrainingSample {
  Eigen::VectorXd features;
  double target_alpha = 0.0;
  Representation rep = Representation::PV;
};

/// A corpus carries both encodings of the same members, one sample per member
/// and representation, plus the seed that generated it.
struct CorpusPair {
  std::vector<TrainingSample> pv;
  std::vector<TrainingSample> fc;
  uint64_t seed = 0;

  const std::vector<TrainingSample>& rep(Representation r) const {
    return r == Representation::PV ? pv : fc;
  }
};

/// splitmix64 step; used to derive independent per-member seeds.
uint64_t derive_seed(uint64_t seed, uint64_t index);

/// Uniform draw in [lo, hi) from the top 53 bits of the generator, so corpora
/// do not depend on the standard library's distribution internals.
double uniform_draw(std::mt19937_64& rng, double lo, double hi);

/// Fourier-coefficient features of a profile from its plain node samples:
/// g_hat_m = 1/(2^m m! sqrt(pi)) sum_j g(xi_j) exp(+xi_j^2) H_m(xi_j) w_j.
Eigen::VectorXd fc_features_from_node_values(const HermiteBasis& basis,
                                             const Eigen::VectorXd& values_at_nodes);

/// Scaled-Gaussian corpus g_{a,H}(x) = H exp(-a^2 x^2): point values at the
/// nodes and Fourier coefficients, target alpha = a in both. Deterministic
/// under the seed; H = 0 members are kept (heights are label-equivalent).
CorpusPair gen_gaussian_samples(const HermiteBasis& basis, int count,
                                Interval a_range, Interval h_range, uint64_t seed);

/// Random clamped cubic spline: m_interior values uniform in [0, value_cap]
/// at equispaced interior break points of [-c, c].
CubicSpline gen_spline(double c, int m_interior, double value_cap, uint64_t seed);

using Profile = std::function<double(double)>;

/// Sup-norm mismatch Gamma(alpha) between a profile and its Hermite-function
/// interpolant p~(x) exp(-(alpha x)^2), with p~ through profile(xi_j) e^{(alpha xi_j)^2}.
double gamma_mismatch(const HermiteBasis& basis, const Profile& profile,
                      double alpha, const Eigen::VectorXd& fine_grid);

struct LabelResult {
  double alpha_k = 0.0;
  Eigen::VectorXd p_tilde_at_nodes;
  double gamma_min = 0.0;
};

/// Minimizer of Gamma over the alpha interval: 101-point grid scan followed by
/// golden-section refinement to 1e-4 around the best grid point.
LabelResult minimizing_hermite_function(const HermiteBasis& basis,
                                        const Profile& profile,
                                        Interval alpha_interval,
                                        const Eigen::VectorXd& fine_grid);
LabelResult minimizing_hermite_function(const HermiteBasis& basis,
                                        const CubicSpline& s,
                                        Interval alpha_interval,
                                        const Eigen::VectorXd& fine_grid);

struct SplineCorpusParams {
  int k = 40;
  int m_interior = 5;
  double c = 4.5;
  double value_cap = 1.0;
  Interval alpha_interval{0.5, 1.5};
};

/// Spline corpus: PV samples are the spline node values, FC samples the
/// coefficients of the minimizing Hermite function (identical node values by
/// construction); targets are the minimizing alpha_k. Degenerate splines
/// (max interior value < 1e-12) are redrawn. Members are labeled in parallel.
CorpusPair build_spline_corpus(const HermiteBasis& basis,
                               const SplineCorpusParams& params, uint64_t seed,
                               bool parallel = true);

/// 1001 equispaced points on [-5, 5], the grid Gamma is evaluated on.
Eigen::VectorXd default_gamma_grid();

/// One CSV per corpus: sample_id, representation, target_alpha, f_1..f_N,
/// 17 significant digits, header row mandatory.
void write_corpus_csv(const CorpusPair& corpus, const std::filesystem::path& path);
CorpusPair read_corpus_csv(const std::filesystem::path& path);

}  // namespace hsc
