#include "hsc/training.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hsc/csvio.hpp"
#include "hsc/parallel.hpp"
#include "hsc/transform.hpp"

namespace hsc {

uint64_t derive_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform_draw(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Eigen::VectorXd fc_features_from_node_values(const HermiteBasis& basis,
                                             const Eigen::VectorXd& values_at_nodes) {
  NodalFunction nodal;
  nodal.alpha = 1.0;
  nodal.values =
      values_at_nodes.array() * basis.nodes.array().square().exp();
  return pv_to_fc(basis, nodal).coeffs;
}

CorpusPair gen_gaussian_samples(const HermiteBasis& basis, int count,
                                Interval a_range, Interval h_range,
                                uint64_t seed) {
  CorpusPair corpus;
  corpus.seed = seed;
  corpus.pv.resize(count);
  corpus.fc.resize(count);
  for (int k = 0; k < count; ++k) {
    std::mt19937_64 rng(derive_seed(seed, k));
    const double a = uniform_draw(rng, a_range.lo, a_range.hi);
    const double height = uniform_draw(rng, h_range.lo, h_range.hi);
    Eigen::VectorXd values =
        height * (-a * a * basis.nodes.array().square()).exp();
    corpus.pv[k] = {values, a, Representation::PV};
    corpus.fc[k] = {fc_features_from_node_values(basis, values), a,
                    Representation::FC};
  }
  return corpus;
}

CubicSpline gen_spline(double c, int m_interior, double value_cap,
                       uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::VectorXd interior(m_interior);
  for (int i = 0; i < m_interior; ++i)
    interior[i] = uniform_draw(rng, 0.0, value_cap);
  return CubicSpline::clamped(c, interior);
}

double gamma_mismatch(const HermiteBasis& basis, const Profile& profile,
                      double alpha, const Eigen::VectorXd& fine_grid) {
  const int n = basis.n;
  Eigen::VectorXd p_tilde(n);
  for (int j = 0; j < n; ++j) {
    const double xi = basis.nodes[j];
    p_tilde[j] = profile(xi) * std::exp(alpha * alpha * xi * xi);
  }
  double worst = 0.0;
  for (int i = 0; i < fine_grid.size(); ++i) {
    const double x = fine_grid[i];
    const double approx =
        barycentric_eval(basis.nodes, basis.bary, p_tilde, x) *
        std::exp(-alpha * alpha * x * x);
    worst = std::max(worst, std::abs(profile(x) - approx));
  }
  return worst;
}

LabelResult minimizing_hermite_function(const HermiteBasis& basis,
                                        const Profile& profile,
                                        Interval alpha_interval,
                                        const Eigen::VectorXd& fine_grid) {
  constexpr int kGridCandidates = 101;
  const double lo = alpha_interval.lo;
  const double hi = alpha_interval.hi;
  const double step = (hi - lo) / (kGridCandidates - 1);
  double best_alpha = lo;
  double best_gamma = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGridCandidates; ++i) {
    const double a = lo + i * step;
    const double g = gamma_mismatch(basis, profile, a, fine_grid);
    if (g < best_gamma) {
      best_gamma = g;
      best_alpha = a;
    }
  }

  // Golden-section refinement within one grid step of the best candidate.
  double a_lo = std::max(lo, best_alpha - step);
  double a_hi = std::min(hi, best_alpha + step);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = a_hi - invphi * (a_hi - a_lo);
  double x2 = a_lo + invphi * (a_hi - a_lo);
  double f1 = gamma_mismatch(basis, profile, x1, fine_grid);
  double f2 = gamma_mismatch(basis, profile, x2, fine_grid);
  while (a_hi - a_lo > 1e-4) {
    if (f1 <= f2) {
      a_hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = a_hi - invphi * (a_hi - a_lo);
      f1 = gamma_mismatch(basis, profile, x1, fine_grid);
    } else {
      a_lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = a_lo + invphi * (a_hi - a_lo);
      f2 = gamma_mismatch(basis, profile, x2, fine_grid);
    }
  }
  const double refined = 0.5 * (a_lo + a_hi);
  const double refined_gamma = gamma_mismatch(basis, profile, refined, fine_grid);

  LabelResult result;
  if (refined_gamma <= best_gamma) {
    result.alpha_k = refined;
    result.gamma_min = refined_gamma;
  } else {
    result.alpha_k = best_alpha;
    result.gamma_min = best_gamma;
  }
  result.p_tilde_at_nodes.resize(basis.n);
  for (int j = 0; j < basis.n; ++j) {
    const double xi = basis.nodes[j];
    result.p_tilde_at_nodes[j] =
        profile(xi) * std::exp(result.alpha_k * result.alpha_k * xi * xi);
  }
  return result;
}

LabelResult minimizing_hermite_function(const HermiteBasis& basis,
                                        const CubicSpline& s,
                                        Interval alpha_interval,
                                        const Eigen::VectorXd& fine_grid) {
  return minimizing_hermite_function(
      basis, [&s](double x) { return s(x); }, alpha_interval, fine_grid);
}

CorpusPair build_spline_corpus(const HermiteBasis& basis,
                               const SplineCorpusParams& params, uint64_t seed,
                               bool parallel) {
  CorpusPair corpus;
  corpus.seed = seed;
  corpus.pv.resize(params.k);
  corpus.fc.resize(params.k);
  const Eigen::VectorXd grid = default_gamma_grid();
  parallel_for(
      params.k,
      [&](int k) {
        uint64_t member_seed = derive_seed(seed, k);
        CubicSpline s = gen_spline(params.c, params.m_interior,
                                   params.value_cap, member_seed);
        while (s.max_interior_value() < 1e-12) {  // degenerate: redraw
          member_seed = derive_seed(member_seed, 0);
          s = gen_spline(params.c, params.m_interior, params.value_cap,
                         member_seed);
        }
        const LabelResult label =
            minimizing_hermite_function(basis, s, params.alpha_interval, grid);
        Eigen::VectorXd values(basis.n);
        for (int j = 0; j < basis.n; ++j) values[j] = s(basis.nodes[j]);
        corpus.pv[k] = {values, label.alpha_k, Representation::PV};
        corpus.fc[k] = {fc_features_from_node_values(basis, values),
                        label.alpha_k, Representation::FC};
      },
      parallel);
  return corpus;
}

Eigen::VectorXd default_gamma_grid() {
  return Eigen::VectorXd::LinSpaced(1001, -5.0, 5.0);
}

void write_corpus_csv(const CorpusPair& corpus, const std::filesystem::path& path) {
  if (corpus.pv.empty()) throw std::invalid_argument("write_corpus_csv: empty corpus");
  const int n = static_cast<int>(corpus.pv.front().features.size());
  std::vector<std::string> header = {"sample_id", "representation", "target_alpha"};
  for (int j = 1; j <= n; ++j) header.push_back("f_" + std::to_string(j));
  CsvWriter csv(path, header);
  for (size_t k = 0; k < corpus.pv.size(); ++k) {
    for (const auto* sample : {&corpus.pv[k], &corpus.fc[k]}) {
      std::vector<std::string> row = {
          std::to_string(k),
          sample->rep == Representation::PV ? "PV" : "FC",
          format_double(sample->target_alpha)};
      for (int j = 0; j < n; ++j) row.push_back(format_double(sample->features[j]));
      csv.write_row(row);
    }
  }
}

CorpusPair read_corpus_csv(const std::filesystem::path& path) {
  const auto rows = read_csv(path);
  if (rows.size() < 2) throw std::runtime_error("read_corpus_csv: no data rows in " + path.string());
  const int n = static_cast<int>(rows.front().size()) - 3;
  if (n < 1) throw std::runtime_error("read_corpus_csv: malformed header in " + path.string());
  CorpusPair corpus;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (static_cast<int>(row.size()) != n + 3)
      throw std::runtime_error("read_corpus_csv: ragged row in " + path.string());
    TrainingSample sample;
    sample.rep = row[1] == "PV" ? Representation::PV : Representation::FC;
    sample.target_alpha = std::stod(row[2]);
    sample.features.resize(n);
    for (int j = 0; j < n; ++j) sample.features[j] = std::stod(row[3 + j]);
    (sample.rep == Representation::PV ? corpus.pv : corpus.fc).push_back(sample);
  }
  return corpus;
}

}  // namespace hsc
