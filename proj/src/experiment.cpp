#include "hsc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hsc/csvio.hpp"
#include "hsc/parallel.hpp"
#include "json.hpp"

namespace hsc {

double problem_initial_alpha(Problem problem) {
  return problem == Problem::Homogeneous ? exact_alpha_homogeneous(0.0)
                                         : exact_alpha_nonhomogeneous(0.0);
}

double problem_exact_alpha(Problem problem, double t) {
  return problem == Problem::Homogeneous ? exact_alpha_homogeneous(t)
                                         : exact_alpha_nonhomogeneous(t);
}

double problem_exact(Problem problem, double x, double t) {
  return problem == Problem::Homogeneous ? exact_homogeneous(x, t)
                                         : exact_nonhomogeneous(x, t);
}

Forcing problem_forcing(Problem problem) {
  if (problem == Problem::Homogeneous) return nullptr;
  return [](double x, double t) { return forcing_nonhomogeneous(x, t); };
}

std::vector<double> default_update_times(Problem problem) {
  std::vector<double> times;
  const int count = problem == Problem::Homogeneous ? 10 : 9;
  for (int i = 1; i <= count; ++i) times.push_back(0.1 * i);
  return times;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

}  // namespace

AlphaPolicy parse_policy(const std::string& text) {
  AlphaPolicy policy;
  const auto parts = split(text, ':');
  if (parts.empty()) throw std::invalid_argument("parse_policy: empty spec");
  const std::string& kind = parts[0];
  if (kind == "exact") {
    policy.kind = PolicyKind::ExactLaw;
  } else if (kind == "const") {
    if (parts.size() != 2) throw std::invalid_argument("parse_policy: const:<alpha>");
    policy.kind = PolicyKind::Constant;
    policy.constant_alpha = std::stod(parts[1]);
  } else if (kind == "piecewise") {
    if (parts.size() != 2)
      throw std::invalid_argument("parse_policy: piecewise:<t>:<a>,... ");
    policy.kind = PolicyKind::PiecewiseList;
    for (const auto& pair : split(parts[1], ',')) {
      const auto ta = split(pair, '@');
      if (ta.size() != 2)
        throw std::invalid_argument("parse_policy: piecewise entries are t@alpha");
      policy.times.push_back(std::stod(ta[0]));
      policy.values.push_back(std::stod(ta[1]));
    }
  } else if (kind == "random") {
    if (parts.size() != 3) throw std::invalid_argument("parse_policy: random:<lo>:<hi>");
    policy.kind = PolicyKind::RandomInInterval;
    policy.random_range = {std::stod(parts[1]), std::stod(parts[2])};
  } else if (kind == "ml") {
    if (parts.size() < 3) throw std::invalid_argument("parse_policy: ml:<reg>:<rep>[:path]");
    policy.kind = PolicyKind::MlDriven;
    if (parts[1] == "svr") policy.regressor = RegressorKind::Svr;
    else if (parts[1] == "mlp") policy.regressor = RegressorKind::Mlp;
    else if (parts[1] == "lsq") policy.regressor = RegressorKind::Lsq;
    else throw std::invalid_argument("parse_policy: unknown regressor " + parts[1]);
    if (parts[2] == "pv") policy.representation = Representation::PV;
    else if (parts[2] == "fc") policy.representation = Representation::FC;
    else throw std::invalid_argument("parse_policy: unknown representation " + parts[2]);
    if (parts.size() > 3) policy.model_path = parts[3];
  } else {
    throw std::invalid_argument("parse_policy: unknown policy kind " + kind);
  }
  return policy;
}

// fixed-format short double for labels (not for data files)
static std::string short_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string policy_label(const AlphaPolicy& policy) {
  switch (policy.kind) {
    case PolicyKind::ExactLaw:
      return "exact-law";
    case PolicyKind::Constant:
      return "const(" + short_num(policy.constant_alpha) + ")";
    case PolicyKind::PiecewiseList:
      return "piecewise(" + short_num(policy.values.front()) + "->" +
             short_num(policy.values.back()) + ")";
    case PolicyKind::RandomInInterval:
      return "random(" + short_num(policy.random_range.lo) + "," +
             short_num(policy.random_range.hi) + ")";
    case PolicyKind::MlDriven: {
      std::string reg = policy.regressor == RegressorKind::Svr   ? "svr"
                        : policy.regressor == RegressorKind::Mlp ? "mlp"
                                                                 : "lsq";
      std::string rep = policy.representation == Representation::PV ? "pv" : "fc";
      return reg + "-" + rep;
    }
  }
  return "unknown";
}

Eigen::VectorXd extract_features(const SpectralState& state, Representation rep) {
  const HermiteBasis& basis = *state.basis;
  const double a2 = state.alpha * state.alpha;
  const Eigen::VectorXd u =
      (state.p.array() * (-a2 * basis.nodes.array().square()).exp()).matrix();
  if (rep == Representation::PV) return u;
  return fc_features_from_node_values(basis, u);
}

namespace {

AnyModel train_policy_model(const ExperimentConfig& config) {
  const AlphaPolicy& policy = config.policy;
  const HermiteBasis basis = HermiteBasis::build(config.n);
  CorpusPair corpus;
  if (config.problem == Problem::Homogeneous) {
    corpus = gen_gaussian_samples(basis, config.corpus_size, config.gaussian_a,
                                  config.gaussian_h, config.seed);
  } else {
    SplineCorpusParams params = config.spline;
    params.k = config.corpus_size;
    corpus = build_spline_corpus(basis, params, config.seed, false);
  }
  const auto& samples = corpus.rep(policy.representation);
  switch (policy.regressor) {
    case RegressorKind::Svr:
      return train_svr(samples, config.svr);
    case RegressorKind::Mlp: {
      std::vector<int> hidden = config.mlp_hidden;
      if (hidden.empty())
        hidden = config.problem == Problem::Homogeneous ? std::vector<int>{20, 10}
                                                        : std::vector<int>{5, 5};
      MlpTrainConfig train = config.mlp_train;
      train.seed = config.seed;
      return train_mlp(samples, hidden, train);
    }
    case RegressorKind::Lsq:
      return train_lsq(samples);
  }
  throw std::logic_error("train_policy_model: unreachable");
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const AlphaPolicy& policy = config.policy;

  ExperimentReport report;
  report.label = config.label.empty() ? policy_label(policy) : config.label;
  report.n = config.n;
  report.dt = config.dt;

  const HermiteBasis basis = HermiteBasis::build(config.n);
  const Forcing forcing = problem_forcing(config.problem);
  const auto law = [&](double t) { return problem_exact_alpha(config.problem, t); };

  std::mt19937_64 rng(config.seed);

  // Initial scaling factor and datum: p_j = u(xi_j, 0) exp(+alpha0^2 xi_j^2).
  double alpha0 = config.alpha0.value_or(problem_initial_alpha(config.problem));
  if (policy.kind == PolicyKind::Constant) alpha0 = policy.constant_alpha;
  if (policy.kind == PolicyKind::PiecewiseList && !policy.times.empty() &&
      policy.times.front() == 0.0)
    alpha0 = policy.values.front();
  if (policy.kind == PolicyKind::RandomInInterval && !config.alpha0.has_value())
    alpha0 = uniform_draw(rng, policy.random_range.lo, policy.random_range.hi);

  SpectralState state;
  state.basis = &basis;
  state.alpha = alpha0;
  state.t = 0.0;
  state.p.resize(basis.n);
  for (int j = 0; j < basis.n; ++j) {
    const double xi = basis.nodes[j];
    state.p[j] = problem_exact(config.problem, xi, 0.0) *
                 std::exp(alpha0 * alpha0 * xi * xi);
  }
  report.alpha_trajectory.emplace_back(0.0, alpha0);

  std::vector<double> update_times = config.update_times;
  if (update_times.empty() && policy.kind != PolicyKind::Constant &&
      policy.kind != PolicyKind::PiecewiseList)
    update_times = default_update_times(config.problem);
  if (policy.kind == PolicyKind::PiecewiseList) {
    update_times.clear();
    for (size_t i = 0; i < policy.times.size(); ++i)
      if (policy.times[i] > 0.0) update_times.push_back(policy.times[i]);
  }

  if (policy.kind == PolicyKind::Constant) {
    const long steps = std::llround(config.t_final / config.dt);
    run_segment(state, steps, config.dt, forcing);
  } else {
    // Shared segment loop for piecewise, random and ML policies.
    std::shared_ptr<const AnyModel> model = policy.model;
    if (policy.kind == PolicyKind::MlDriven && !model) {
      if (!policy.model_path.empty())
        model = std::make_shared<AnyModel>(load_model(policy.model_path));
      else
        model = std::make_shared<AnyModel>(train_policy_model(config));
    }
    const AlphaInterval admissible = basis.admissible_alpha();

    size_t piecewise_at = 0;
    if (policy.kind == PolicyKind::PiecewiseList && !policy.times.empty() &&
        policy.times.front() == 0.0)
      piecewise_at = 1;

    double t_prev = 0.0;
    for (size_t i = 0; i <= update_times.size() && !state.diverged; ++i) {
      const double t_next =
          i < update_times.size() ? update_times[i] : config.t_final;
      const long steps = std::llround((t_next - t_prev) / config.dt);
      if (steps > 0) {
        run_segment(state, steps, config.dt, forcing);
        if (state.diverged) break;
        state.t = t_next;
      }
      t_prev = t_next;
      if (i >= update_times.size() || t_next >= config.t_final) break;

      double a_new = state.alpha;
      switch (policy.kind) {
        case PolicyKind::ExactLaw:
          a_new = law(t_next);
          break;
        case PolicyKind::PiecewiseList:
          a_new = policy.values.at(piecewise_at++);
          break;
        case PolicyKind::RandomInInterval:
          a_new = uniform_draw(rng, policy.random_range.lo, policy.random_range.hi);
          break;
        case PolicyKind::MlDriven: {
          const Eigen::VectorXd features =
              extract_features(state, policy.representation);
          const double predicted = predict_any(*model, features);
          a_new = admissible.clamp(predicted);
          if (a_new != predicted) report.clamped_instants.push_back(t_next);
          break;
        }
        default:
          break;
      }
      switch_alpha(state, a_new);
      report.alpha_trajectory.emplace_back(t_next, a_new);
    }

    // A terminal update exactly at t_final re-expands the state without
    // advancing it (random draws stop at the last interior instant).
    if (!state.diverged && !update_times.empty() &&
        update_times.back() >= config.t_final - 1e-12 &&
        policy.kind != PolicyKind::RandomInInterval) {
      double a_new = state.alpha;
      bool apply = true;
      switch (policy.kind) {
        case PolicyKind::ExactLaw:
          a_new = law(config.t_final);
          break;
        case PolicyKind::PiecewiseList:
          apply = piecewise_at < policy.values.size();
          if (apply) a_new = policy.values[piecewise_at];
          break;
        case PolicyKind::MlDriven: {
          const Eigen::VectorXd features =
              extract_features(state, policy.representation);
          const double predicted = predict_any(*model, features);
          a_new = admissible.clamp(predicted);
          if (a_new != predicted)
            report.clamped_instants.push_back(config.t_final);
          break;
        }
        default:
          apply = false;
          break;
      }
      if (apply) {
        switch_alpha(state, a_new);
        report.alpha_trajectory.emplace_back(config.t_final, a_new);
      }
    }
  }

  if (state.diverged) {
    report.diverged = true;
    report.diverged_t = state.t;
    report.diverged_step = state.diverged_step;
  } else {
    const double t_final = config.t_final;
    const auto exact = [&](double x) {
      return problem_exact(config.problem, x, t_final);
    };
    const Eigen::VectorXd grid = default_fine_grid(config.n);
    report.norms = error_norms(state, exact, grid);
    const Eigen::VectorXd u_grid =
        evaluate_hermite_function(state.p, basis, state.alpha, grid);
    report.final_solution.reserve(grid.size());
    for (int i = 0; i < grid.size(); ++i)
      report.final_solution.emplace_back(grid[i], u_grid[i]);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

std::vector<ExperimentReport> run_batch(const std::vector<ExperimentConfig>& configs,
                                        bool parallel) {
  std::vector<ExperimentReport> reports(configs.size());
  parallel_for(
      static_cast<int>(configs.size()),
      [&](int i) { reports[i] = run_experiment(configs[i]); }, parallel);
  return reports;
}

void write_report_csv(const std::vector<ExperimentReport>& reports,
                      const std::filesystem::path& path) {
  CsvWriter csv(path, {"label", "n", "dt", "status", "n1", "n2", "n3"});
  for (const auto& r : reports) {
    if (r.diverged) {
      csv.write_row({r.label, std::to_string(r.n), format_double(r.dt),
                     "does not converge", "does not converge",
                     "does not converge", "does not converge"});
    } else {
      csv.write_row({r.label, std::to_string(r.n), format_double(r.dt), "ok",
                     format_double(r.norms.n1), format_double(r.norms.n2),
                     format_double(r.norms.n3)});
    }
  }
}

void write_alpha_trajectory(const ExperimentReport& report,
                            const std::filesystem::path& path) {
  write_plot_data(path, report.alpha_trajectory);
}

ExperimentConfig config_from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  if (j.value("schema_version", 0) != 1)
    throw std::runtime_error("config: unsupported schema_version in " + path.string());
  ExperimentConfig config;
  const std::string problem = j.value("problem", "homogeneous");
  if (problem == "homogeneous") config.problem = Problem::Homogeneous;
  else if (problem == "nonhomogeneous") config.problem = Problem::Nonhomogeneous;
  else throw std::runtime_error("config: unknown problem " + problem);
  config.label = j.value("label", "");
  config.n = j.value("n", config.problem == Problem::Homogeneous ? 10 : 16);
  config.dt = j.value("dt", 1e-6);
  config.t_final = j.value("t_final", 1.0);
  config.seed = j.value("seed", 0ull);
  if (j.contains("alpha0")) config.alpha0 = j["alpha0"].get<double>();
  if (j.contains("update_times"))
    config.update_times = j["update_times"].get<std::vector<double>>();
  config.policy = parse_policy(j.value("policy", "exact"));
  if (j.contains("corpus_size")) config.corpus_size = j["corpus_size"].get<int>();
  if (j.contains("mlp_hidden"))
    config.mlp_hidden = j["mlp_hidden"].get<std::vector<int>>();
  if (j.contains("svr_nu")) config.svr.nu = j["svr_nu"].get<double>();
  if (j.contains("svr_gamma")) config.svr.gamma = j["svr_gamma"].get<double>();
  return config;
}

}  // namespace hsc
