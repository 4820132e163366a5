#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "hsc/experiment.hpp"

namespace hsc::tables {

struct TableOptions {
  std::filesystem::path out_dir = "out";
  uint64_t seed = 1;
  double dt = 0.0;        // 0 selects the table's desk-scale default
  bool paper_dt = false;  // restore the time step the reference runs used
  bool parallel = true;
};

struct TableResult {
  std::string name;
  std::vector<ExperimentReport> reports;
  std::vector<std::filesystem::path> files;
};

/// Regressor bundle for the homogeneous experiments: nu-SVR and a (20,10)
/// network on both encodings of the scaled-Gaussian corpus.
struct ModelBundle {
  CorpusPair corpus;
  std::shared_ptr<const AnyModel> svr_pv, svr_fc, mlp_pv, mlp_fc;
};

ModelBundle train_homogeneous_models(const HermiteBasis& basis, uint64_t seed);

/// Same bundle for the forced experiments: spline corpus, (5,5) networks.
ModelBundle train_forced_models(const HermiteBasis& basis, uint64_t seed,
                                bool parallel = true);

TableResult reproduce_table1(const TableOptions& options);
TableResult reproduce_table2(const TableOptions& options);
TableResult reproduce_table3(const TableOptions& options);
TableResult reproduce_table4(const TableOptions& options);
TableResult reproduce_table5(const TableOptions& options);
TableResult reproduce_table6(const TableOptions& options);

/// Dispatch by name "table1".."table6".
TableResult reproduce(const std::string& name, const TableOptions& options);

}  // namespace hsc::tables
