#include "hsc/tables.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "hsc/csvio.hpp"

namespace hsc::tables {

namespace {

std::string sanitize(const std::string& label) {
  std::string out;
  for (char c : label)
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '-';
  return out;
}

double pick_dt(const TableOptions& options, double desk, double paper) {
  if (options.dt > 0.0) return options.dt;
  return options.paper_dt ? paper : desk;
}

void emit_run_data(TableResult& result, const TableOptions& options) {
  for (const auto& report : result.reports) {
    const auto stem = sanitize(result.name + "_" + report.label);
    const auto alpha_path = options.out_dir / ("alpha_" + stem + ".dat");
    write_alpha_trajectory(report, alpha_path);
    result.files.push_back(alpha_path);
    if (!report.diverged) {
      const auto sol_path = options.out_dir / ("solution_" + stem + ".dat");
      write_plot_data(sol_path, report.final_solution);
      result.files.push_back(sol_path);
    }
  }
}

std::string norm_cell(const ExperimentReport& r, double ErrorNorms::* member) {
  return r.diverged ? "does not converge" : format_double(r.norms.*member);
}

}  // namespace

ModelBundle train_homogeneous_models(const HermiteBasis& basis, uint64_t seed) {
  ModelBundle bundle;
  bundle.corpus = gen_gaussian_samples(basis, 40, {0.2, 0.6}, {0.0, 1.0}, seed);
  SvrParams svr;
  bundle.svr_pv = std::make_shared<AnyModel>(train_svr(bundle.corpus.pv, svr));
  bundle.svr_fc = std::make_shared<AnyModel>(train_svr(bundle.corpus.fc, svr));
  MlpTrainConfig mlp;
  mlp.seed = derive_seed(seed, 101);
  bundle.mlp_pv = std::make_shared<AnyModel>(train_mlp(bundle.corpus.pv, {20, 10}, mlp));
  mlp.seed = derive_seed(seed, 102);
  bundle.mlp_fc = std::make_shared<AnyModel>(train_mlp(bundle.corpus.fc, {20, 10}, mlp));
  return bundle;
}

ModelBundle train_forced_models(const HermiteBasis& basis, uint64_t seed,
                                bool parallel) {
  ModelBundle bundle;
  SplineCorpusParams params;  // K=40, M=5, c=4.5, cap=1, I=[0.5,1.5]
  bundle.corpus = build_spline_corpus(basis, params, seed, parallel);
  SvrParams svr;
  bundle.svr_pv = std::make_shared<AnyModel>(train_svr(bundle.corpus.pv, svr));
  bundle.svr_fc = std::make_shared<AnyModel>(train_svr(bundle.corpus.fc, svr));
  MlpTrainConfig mlp;
  mlp.seed = derive_seed(seed, 201);
  bundle.mlp_pv = std::make_shared<AnyModel>(train_mlp(bundle.corpus.pv, {5, 5}, mlp));
  mlp.seed = derive_seed(seed, 202);
  bundle.mlp_fc = std::make_shared<AnyModel>(train_mlp(bundle.corpus.fc, {5, 5}, mlp));
  return bundle;
}

TableResult reproduce_table1(const TableOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  const double dt = pick_dt(options, 1e-6, 1e-7);
  std::vector<ExperimentConfig> configs;
  for (int n : {4, 6, 8, 10}) {
    ExperimentConfig config;
    config.label = "N" + std::to_string(n);
    config.problem = Problem::Homogeneous;
    config.n = n;
    config.dt = dt;
    config.policy.kind = PolicyKind::ExactLaw;
    configs.push_back(config);
  }
  TableResult result;
  result.name = "table1";
  result.reports = run_batch(configs, options.parallel);
  const auto csv_path = options.out_dir / "table1.csv";
  CsvWriter csv(csv_path, {"N", "n1", "n2", "n3"});
  for (size_t i = 0; i < configs.size(); ++i) {
    const auto& r = result.reports[i];
    csv.write_row({std::to_string(configs[i].n), norm_cell(r, &ErrorNorms::n1),
                   norm_cell(r, &ErrorNorms::n2), norm_cell(r, &ErrorNorms::n3)});
  }
  result.files.push_back(csv_path);
  emit_run_data(result, options);
  return result;
}

TableResult reproduce_table2(const TableOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  const double dt = pick_dt(options, 1e-6, 1e-7);
  std::vector<ExperimentConfig> configs;
  for (double alpha : {0.5, 0.3}) {
    for (int n : {4, 6, 8, 10}) {
      ExperimentConfig config;
      config.label = "alpha" + std::to_string(alpha).substr(0, 3) + "_N" +
                     std::to_string(n);
      config.problem = Problem::Homogeneous;
      config.n = n;
      config.dt = dt;
      config.policy.kind = PolicyKind::Constant;
      config.policy.constant_alpha = alpha;
      configs.push_back(config);
    }
  }
  TableResult result;
  result.name = "table2";
  result.reports = run_batch(configs, options.parallel);
  const auto csv_path = options.out_dir / "table2.csv";
  CsvWriter csv(csv_path, {"alpha", "N", "n1", "n2"});
  size_t at = 0;
  for (double alpha : {0.5, 0.3}) {
    for (int n : {4, 6, 8, 10}) {
      const auto& r = result.reports[at++];
      csv.write_row({format_double(alpha), std::to_string(n),
                     norm_cell(r, &ErrorNorms::n1), norm_cell(r, &ErrorNorms::n2)});
    }
  }
  result.files.push_back(csv_path);
  emit_run_data(result, options);
  return result;
}

TableResult reproduce_table3(const TableOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  const double dt = pick_dt(options, 1e-6, 1e-7);

  // Left panel: alpha stepping down from 0.5 at every subinterval boundary,
  // reaching 0.3 exactly at T = 1 (terminal re-expansion).
  AlphaPolicy decreasing;
  decreasing.kind = PolicyKind::PiecewiseList;
  for (int i = 0; i <= 10; ++i) {
    decreasing.times.push_back(0.1 * i);
    decreasing.values.push_back(0.5 - 0.02 * i);
  }
  // Right panel: ten values drawn in [0.3, 0.5], one per subinterval.
  AlphaPolicy random;
  random.kind = PolicyKind::RandomInInterval;
  random.random_range = {0.3, 0.5};

  std::vector<ExperimentConfig> configs;
  for (const auto* policy : {&decreasing, &random}) {
    for (int n : {4, 6, 8, 10}) {
      ExperimentConfig config;
      config.problem = Problem::Homogeneous;
      config.n = n;
      config.dt = dt;
      config.policy = *policy;
      config.seed = options.seed;
      config.update_times = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
      config.label = (policy == &decreasing ? "decreasing_N" : "random_N") +
                     std::to_string(n);
      configs.push_back(config);
    }
  }
  TableResult result;
  result.name = "table3";
  result.reports = run_batch(configs, options.parallel);
  const auto csv_path = options.out_dir / "table3.csv";
  CsvWriter csv(csv_path, {"variant", "N", "n1", "n2"});
  size_t at = 0;
  for (const char* variant : {"decreasing", "random"}) {
    for (int n : {4, 6, 8, 10}) {
      const auto& r = result.reports[at++];
      csv.write_row({variant, std::to_string(n), norm_cell(r, &ErrorNorms::n1),
                     norm_cell(r, &ErrorNorms::n2)});
    }
  }
  result.files.push_back(csv_path);
  emit_run_data(result, options);
  return result;
}

namespace {

// The four ML-driven homogeneous runs of the Table 4/5 setting at N = 10.
std::vector<ExperimentConfig> ml_homogeneous_configs(const ModelBundle& models,
                                                     double dt, uint64_t seed) {
  std::vector<ExperimentConfig> configs;
  const struct {
    const char* label;
    RegressorKind reg;
    Representation rep;
    std::shared_ptr<const AnyModel> model;
  } entries[] = {
      {"svr-fc", RegressorKind::Svr, Representation::FC, models.svr_fc},
      {"mlp-fc", RegressorKind::Mlp, Representation::FC, models.mlp_fc},
      {"svr-pv", RegressorKind::Svr, Representation::PV, models.svr_pv},
      {"mlp-pv", RegressorKind::Mlp, Representation::PV, models.mlp_pv},
  };
  for (const auto& e : entries) {
    ExperimentConfig config;
    config.label = e.label;
    config.problem = Problem::Homogeneous;
    config.n = 10;
    config.dt = dt;
    config.seed = seed;
    config.policy.kind = PolicyKind::MlDriven;
    config.policy.regressor = e.reg;
    config.policy.representation = e.rep;
    config.policy.model = e.model;
    configs.push_back(config);
  }
  return configs;
}

TableResult run_table45(const TableOptions& options, bool emit_table4,
                        bool emit_table5) {
  std::filesystem::create_directories(options.out_dir);
  const double dt = pick_dt(options, 1e-6, 1e-7);
  const HermiteBasis basis = HermiteBasis::build(10);
  const ModelBundle models = train_homogeneous_models(basis, options.seed);
  const auto configs = ml_homogeneous_configs(models, dt, options.seed);

  TableResult result;
  result.name = emit_table4 ? "table4" : "table5";
  result.reports = run_batch(configs, options.parallel);

  if (emit_table4) {
    const auto csv_path = options.out_dir / "table4.csv";
    CsvWriter csv(csv_path, {"t", "alpha_exact", "alpha_svm_fc", "alpha_dl_fc",
                             "alpha_svm_pv", "alpha_dl_pv"});
    for (int row = 0; row <= 10; ++row) {
      const double t = 0.1 * row;
      std::vector<std::string> cells = {format_double(t),
                                        format_double(exact_alpha_homogeneous(t))};
      for (int run : {0, 1, 2, 3}) {
        const auto& traj = result.reports[run].alpha_trajectory;
        cells.push_back(row < static_cast<int>(traj.size())
                            ? format_double(traj[row].second)
                            : "diverged");
      }
      csv.write_row(cells);
    }
    result.files.push_back(csv_path);
  }
  if (emit_table5) {
    const auto csv_path = options.out_dir / "table5.csv";
    CsvWriter csv(csv_path, {"policy", "n1", "n2"});
    for (const auto& r : result.reports)
      csv.write_row({r.label, norm_cell(r, &ErrorNorms::n1),
                     norm_cell(r, &ErrorNorms::n2)});
    result.files.push_back(csv_path);
  }
  emit_run_data(result, options);
  return result;
}

}  // namespace

TableResult reproduce_table4(const TableOptions& options) {
  return run_table45(options, true, false);
}

TableResult reproduce_table5(const TableOptions& options) {
  return run_table45(options, false, true);
}

TableResult reproduce_table6(const TableOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  const double dt = pick_dt(options, 1e-6, 1e-6);
  const HermiteBasis basis = HermiteBasis::build(16);
  const ModelBundle models = train_forced_models(basis, options.seed, options.parallel);

  std::vector<ExperimentConfig> configs;
  auto base = [&](const std::string& label) {
    ExperimentConfig config;
    config.label = label;
    config.problem = Problem::Nonhomogeneous;
    config.n = 16;
    config.dt = dt;
    config.seed = options.seed;
    return config;
  };
  {
    ExperimentConfig c = base("exact-law");
    c.policy.kind = PolicyKind::ExactLaw;
    configs.push_back(c);
  }
  {
    ExperimentConfig c = base("const-sqrt2");
    c.policy.kind = PolicyKind::Constant;
    c.policy.constant_alpha = std::sqrt(2.0);
    configs.push_back(c);
  }
  {
    ExperimentConfig c = base("random");
    c.policy.kind = PolicyKind::RandomInInterval;
    c.policy.random_range = {0.5, 1.5};
    c.alpha0 = std::sqrt(2.0);  // datum value; nine draws at t = 0.1 .. 0.9
    configs.push_back(c);
  }
  const struct {
    const char* label;
    RegressorKind reg;
    Representation rep;
    std::shared_ptr<const AnyModel> model;
  } ml_entries[] = {
      {"svr-fc", RegressorKind::Svr, Representation::FC, models.svr_fc},
      {"mlp-fc", RegressorKind::Mlp, Representation::FC, models.mlp_fc},
      {"svr-pv", RegressorKind::Svr, Representation::PV, models.svr_pv},
      {"mlp-pv", RegressorKind::Mlp, Representation::PV, models.mlp_pv},
  };
  for (const auto& e : ml_entries) {
    ExperimentConfig c = base(e.label);
    c.policy.kind = PolicyKind::MlDriven;
    c.policy.regressor = e.reg;
    c.policy.representation = e.rep;
    c.policy.model = e.model;
    configs.push_back(c);
  }
  {
    ExperimentConfig c = base("const-0.8");
    c.policy.kind = PolicyKind::Constant;
    c.policy.constant_alpha = 0.8;
    configs.push_back(c);
  }

  TableResult result;
  result.name = "table6";
  result.reports = run_batch(configs, options.parallel);
  const auto csv_path = options.out_dir / "table6.csv";
  CsvWriter csv(csv_path, {"policy", "n1", "n2"});
  for (const auto& r : result.reports)
    csv.write_row({r.label, norm_cell(r, &ErrorNorms::n1),
                   norm_cell(r, &ErrorNorms::n2)});
  result.files.push_back(csv_path);
  emit_run_data(result, options);
  return result;
}

TableResult reproduce(const std::string& name, const TableOptions& options) {
  if (name == "table1") return reproduce_table1(options);
  if (name == "table2") return reproduce_table2(options);
  if (name == "table3") return reproduce_table3(options);
  if (name == "table4") return reproduce_table4(options);
  if (name == "table5") return reproduce_table5(options);
  if (name == "table6") return reproduce_table6(options);
  throw std::invalid_argument("reproduce: unknown table '" + name + "'");
}

}  // namespace hsc::tables
