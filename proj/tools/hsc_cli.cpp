#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "hsc/csvio.hpp"
#include "hsc/experiment.hpp"
#include "hsc/model_io.hpp"
#include "hsc/tables.hpp"

namespace {

int cmd_basis(int n, const std::string& out) {
  const hsc::HermiteBasis basis = hsc::HermiteBasis::build(n);
  std::FILE* f = out.empty() ? stdout : std::fopen(out.c_str(), "w");
  if (!f) {
    std::cerr << "basis: cannot open " << out << "\n";
    return 1;
  }
  std::fprintf(f, "j,xi,w\n");
  for (int j = 0; j < n; ++j)
    std::fprintf(f, "%d,%.17g,%.17g\n", j + 1, basis.nodes[j], basis.weights[j]);
  if (!out.empty()) std::fclose(f);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive Hermite spectral collocation for the 1D heat equation"};
  app.require_subcommand(1);

  // basis
  int basis_n = 10;
  std::string basis_out;
  auto* basis_cmd = app.add_subcommand("basis", "Print nodes and weights as CSV");
  basis_cmd->add_option("--n", basis_n, "Number of nodes")->required();
  basis_cmd->add_option("--out", basis_out, "Output file (default stdout)");

  // gen-corpus
  std::string corpus_kind = "gaussian";
  int corpus_n = 10;
  int corpus_count = 40;
  uint64_t corpus_seed = 1;
  std::string corpus_out = "corpus.csv";
  auto* corpus_cmd = app.add_subcommand("gen-corpus", "Generate a training corpus CSV");
  corpus_cmd->add_option("--kind", corpus_kind, "gaussian | spline")
      ->check(CLI::IsMember({"gaussian", "spline"}));
  corpus_cmd->add_option("--n", corpus_n, "Basis size (10 gaussian, 16 spline)");
  corpus_cmd->add_option("--count", corpus_count, "Corpus members");
  corpus_cmd->add_option("--seed", corpus_seed, "RNG seed");
  corpus_cmd->add_option("--out", corpus_out, "Output CSV path");

  // train
  std::string train_model = "svr";
  std::string train_rep = "fc";
  std::string train_corpus;
  std::string train_out = "model.json";
  uint64_t train_seed = 1;
  double train_nu = 0.5;
  double train_gamma = 0.0;
  std::vector<int> train_hidden;
  auto* train_cmd = app.add_subcommand("train", "Train a regressor from a corpus CSV");
  train_cmd->add_option("--model", train_model, "svr | mlp | lsq")
      ->check(CLI::IsMember({"svr", "mlp", "lsq"}));
  train_cmd->add_option("--rep", train_rep, "pv | fc")
      ->check(CLI::IsMember({"pv", "fc"}));
  train_cmd->add_option("--corpus", train_corpus, "Corpus CSV")->required();
  train_cmd->add_option("--out", train_out, "Model output path");
  train_cmd->add_option("--seed", train_seed, "Training seed (mlp)");
  train_cmd->add_option("--nu", train_nu, "nu parameter (svr)");
  train_cmd->add_option("--gamma", train_gamma, "RBF gamma, 0 = 1/N (svr)");
  train_cmd->add_option("--hidden", train_hidden, "Hidden layer sizes (mlp)");

  // solve
  std::string solve_config;
  std::string solve_problem = "homogeneous";
  int solve_n = 0;
  double solve_dt = 0.0;
  double solve_tfinal = 1.0;
  std::string solve_policy;
  uint64_t solve_seed = 0;
  std::string solve_out = "out";
  auto* solve_cmd = app.add_subcommand("solve", "Run one experiment and write its report");
  solve_cmd->add_option("--config", solve_config, "JSON config (flags override)");
  solve_cmd->add_option("--problem", solve_problem, "homogeneous | nonhomogeneous")
      ->check(CLI::IsMember({"homogeneous", "nonhomogeneous"}));
  solve_cmd->add_option("--n", solve_n, "Basis size");
  solve_cmd->add_option("--dt", solve_dt, "Time step");
  solve_cmd->add_option("--tfinal", solve_tfinal, "Final time");
  solve_cmd->add_option("--policy", solve_policy,
                        "exact | const:<a> | piecewise:<t@a,...> | random:<lo>:<hi> "
                        "| ml:<svr|mlp|lsq>:<pv|fc>[:model.json]");
  solve_cmd->add_option("--seed", solve_seed, "Seed");
  solve_cmd->add_option("--out", solve_out, "Output directory");

  // reproduce
  std::string repro_table;
  std::string repro_config;
  std::string repro_out = "out";
  uint64_t repro_seed = 1;
  double repro_dt = 0.0;
  bool repro_paper_dt = false;
  bool repro_serial = false;
  auto* repro_cmd = app.add_subcommand("reproduce", "Rebuild a reference table");
  repro_cmd->add_option("table", repro_table, "table1 .. table6");
  repro_cmd->add_option("--config", repro_config, "JSON config with a 'table' key");
  repro_cmd->add_option("--out", repro_out, "Output directory");
  repro_cmd->add_option("--seed", repro_seed, "Seed for corpora and policies");
  repro_cmd->add_option("--dt", repro_dt, "Override the time step");
  repro_cmd->add_flag("--paper-dt", repro_paper_dt, "Use the reference time step");
  repro_cmd->add_flag("--serial", repro_serial, "Disable the OpenMP batch runner");

  // report
  std::string report_dir = "out";
  auto* report_cmd = app.add_subcommand("report", "Print the CSVs under a directory");
  report_cmd->add_option("--dir", report_dir, "Directory holding CSV output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (basis_cmd->parsed()) return cmd_basis(basis_n, basis_out);

    if (corpus_cmd->parsed()) {
      if (corpus_kind == "gaussian") {
        const auto basis = hsc::HermiteBasis::build(corpus_n);
        const auto corpus = hsc::gen_gaussian_samples(basis, corpus_count,
                                                      {0.2, 0.6}, {0.0, 1.0},
                                                      corpus_seed);
        hsc::write_corpus_csv(corpus, corpus_out);
      } else {
        const int n = corpus_n == 10 ? 16 : corpus_n;
        const auto basis = hsc::HermiteBasis::build(n);
        hsc::SplineCorpusParams params;
        params.k = corpus_count;
        const auto corpus = hsc::build_spline_corpus(basis, params, corpus_seed);
        hsc::write_corpus_csv(corpus, corpus_out);
      }
      std::cout << "wrote " << corpus_out << "\n";
      return 0;
    }

    if (train_cmd->parsed()) {
      const auto corpus = hsc::read_corpus_csv(train_corpus);
      const auto& samples = corpus.rep(train_rep == "pv" ? hsc::Representation::PV
                                                         : hsc::Representation::FC);
      hsc::AnyModel model = [&]() -> hsc::AnyModel {
        if (train_model == "svr") {
          hsc::SvrParams params;
          params.nu = train_nu;
          params.gamma = train_gamma;
          return hsc::train_svr(samples, params);
        }
        if (train_model == "mlp") {
          hsc::MlpTrainConfig config;
          config.seed = train_seed;
          std::vector<int> hidden = train_hidden;
          if (hidden.empty()) hidden = {20, 10};
          return hsc::train_mlp(samples, hidden, config);
        }
        return hsc::train_lsq(samples);
      }();
      hsc::save_model(model, train_out);
      std::cout << "wrote " << train_out << "\n";
      return 0;
    }

    if (solve_cmd->parsed()) {
      hsc::ExperimentConfig config;
      if (!solve_config.empty()) config = hsc::config_from_json_file(solve_config);
      if (solve_cmd->count("--problem") || solve_config.empty())
        config.problem = solve_problem == "homogeneous"
                             ? hsc::Problem::Homogeneous
                             : hsc::Problem::Nonhomogeneous;
      if (solve_n > 0) config.n = solve_n;
      else if (solve_config.empty())
        config.n = config.problem == hsc::Problem::Homogeneous ? 10 : 16;
      if (solve_dt > 0.0) config.dt = solve_dt;
      if (solve_cmd->count("--tfinal")) config.t_final = solve_tfinal;
      if (!solve_policy.empty()) config.policy = hsc::parse_policy(solve_policy);
      if (solve_cmd->count("--seed")) config.seed = solve_seed;

      const auto report = hsc::run_experiment(config);
      std::filesystem::create_directories(solve_out);
      hsc::write_report_csv({report}, std::filesystem::path(solve_out) / "report.csv");
      hsc::write_alpha_trajectory(
          report, std::filesystem::path(solve_out) / "alpha.dat");
      if (!report.diverged)
        hsc::write_plot_data(std::filesystem::path(solve_out) / "solution.dat",
                             report.final_solution);
      if (report.diverged) {
        std::cout << report.label << ": does not converge (t = " << report.diverged_t
                  << ")\n";
        return 2;
      }
      std::cout << report.label << ": n1 = " << hsc::format_double(report.norms.n1)
                << "  n2 = " << hsc::format_double(report.norms.n2)
                << "  n3 = " << hsc::format_double(report.norms.n3) << "\n";
      return 0;
    }

    if (repro_cmd->parsed()) {
      hsc::tables::TableOptions options;
      std::string table = repro_table;
      if (!repro_config.empty()) {
        std::ifstream in(repro_config);
        if (!in) throw std::runtime_error("reproduce: cannot open " + repro_config);
        nlohmann::json j;
        in >> j;
        if (j.value("schema_version", 0) != 1)
          throw std::runtime_error("reproduce: unsupported schema_version");
        table = j.value("table", table);
        options.seed = j.value("seed", options.seed);
        options.dt = j.value("dt", options.dt);
        options.out_dir = j.value("out", options.out_dir.string());
        options.paper_dt = j.value("paper_dt", options.paper_dt);
      }
      if (repro_cmd->count("--out") || repro_config.empty())
        options.out_dir = repro_out;
      if (repro_cmd->count("--seed")) options.seed = repro_seed;
      if (repro_cmd->count("--dt")) options.dt = repro_dt;
      if (repro_paper_dt) options.paper_dt = true;
      options.parallel = !repro_serial;
      if (table.empty())
        throw std::runtime_error("reproduce: no table given (argument or config)");

      const auto result = hsc::tables::reproduce(table, options);
      for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
      for (const auto& r : result.reports) {
        std::cout << "  " << r.label << ": "
                  << (r.diverged ? "does not converge"
                                 : "n1 = " + hsc::format_double(r.norms.n1))
                  << "\n";
      }
      return 0;
    }

    if (report_cmd->parsed()) {
      for (const auto& entry : std::filesystem::directory_iterator(report_dir)) {
        if (entry.path().extension() != ".csv") continue;
        std::cout << "== " << entry.path().filename().string() << "\n";
        for (const auto& row : hsc::read_csv(entry.path())) {
          for (size_t i = 0; i < row.size(); ++i)
            std::cout << (i ? "  " : "") << row[i];
          std::cout << "\n";
        }
        std::cout << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
