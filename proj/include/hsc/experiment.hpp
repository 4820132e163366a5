#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsc/heat.hpp"
#include "hsc/model_io.hpp"
#include "hsc/training.hpp"

namespace hsc {

enum class Problem { Homogeneous, Nonhomogeneous };

double problem_initial_alpha(Problem problem);
double problem_exact_alpha(Problem problem, double t);
double problem_exact(Problem problem, double x, double t);
Forcing problem_forcing(Problem problem);  // empty for the homogeneous case

enum class PolicyKind { ExactLaw, Constant, PiecewiseList, RandomInInterval, MlDriven };
enum class RegressorKind { Svr, Mlp, Lsq };

/// Rule producing the scaling factor at update instants. The exact law is
/// re-evaluated every time step; the other kinds act at the configured
/// update instants only.
struct AlphaPolicy {
  PolicyKind kind = PolicyKind::ExactLaw;
  double constant_alpha = 0.5;
  std::vector<double> times;   // piecewise: instants, first may be 0
  std::vector<double> values;  // piecewise: value holding from times[i] on
  Interval random_range{0.3, 0.5};
  RegressorKind regressor = RegressorKind::Svr;
  Representation representation = Representation::FC;
  std::string model_path;                  // optional serialized model
  std::shared_ptr<const AnyModel> model;   // in-memory model, wins over path
};

/// Parses "exact", "const:<a>", "piecewise:<t>:<a>,<t>:<a>,...",
/// "random:<lo>:<hi>", "ml:<svr|mlp|lsq>:<pv|fc>[:<model.json>]".
AlphaPolicy parse_policy(const std::string& text);
std::string policy_label(const AlphaPolicy& policy);

struct ExperimentConfig {
  std::string label;
  Problem problem = Problem::Homogeneous;
  int n = 10;
  double dt = 1e-6;
  double t_final = 1.0;
  std::optional<double> alpha0;        // defaults to the problem's datum
  std::vector<double> update_times;    // defaults per problem
  AlphaPolicy policy;
  uint64_t seed = 0;

  // Settings for models trained on the fly by ML policies.
  int corpus_size = 40;
  Interval gaussian_a{0.2, 0.6};
  Interval gaussian_h{0.0, 1.0};
  SplineCorpusParams spline;
  std::vector<int> mlp_hidden;  // empty selects the per-problem default
  SvrParams svr;
  MlpTrainConfig mlp_train;
};

/// Ten updates on [0,1] for the homogeneous case (t = 0.1 .. 1.0), nine for
/// the forced case (t = 0.1 .. 0.9).
std::vector<double> default_update_times(Problem problem);

struct ExperimentReport {
  std::string label;
  int n = 0;
  double dt = 0.0;
  bool diverged = false;
  double diverged_t = 0.0;
  long diverged_step = -1;
  ErrorNorms norms;
  std::vector<std::pair<double, double>> alpha_trajectory;  // (t, alpha)
  std::vector<std::pair<double, double>> final_solution;    // (x, u_N) at T
  std::vector<double> clamped_instants;
  double wall_seconds = 0.0;
};

/// Features of the physical profile u_N in the convention of the training
/// corpora: PV are u_N at the nodes, FC the alpha=1 Fourier coefficients.
Eigen::VectorXd extract_features(const SpectralState& state, Representation rep);

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Independent experiments, optionally OpenMP-parallel; reports come back in
/// config order regardless of scheduling.
std::vector<ExperimentReport> run_batch(const std::vector<ExperimentConfig>& configs,
                                        bool parallel = true);

/// Generic report CSV (label, n, dt, status, norms); diverged runs read
/// "does not converge" in the norm columns.
void write_report_csv(const std::vector<ExperimentReport>& reports,
                      const std::filesystem::path& path);

/// Two-column t/alpha data file of a run's trajectory.
void write_alpha_trajectory(const ExperimentReport& report,
                            const std::filesystem::path& path);

ExperimentConfig config_from_json_file(const std::filesystem::path& path);

}  // namespace hsc
