// Compares the serial reference loops against the OpenMP-parallel paths for
// the two batch-level workloads: spline-corpus labeling and experiment batches.

#include <chrono>
#include <cstdio>

#include "hsc/experiment.hpp"
#include "hsc/parallel.hpp"
#include "hsc/tables.hpp"
#include "hsc/training.hpp"

namespace {

double time_seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int main() {
  std::printf("workers available: %d\n\n", hsc::max_workers());

  {
    const auto basis = hsc::HermiteBasis::build(16);
    hsc::SplineCorpusParams params;
    params.k = 40;
    const double serial = time_seconds(
        [&] { hsc::build_spline_corpus(basis, params, 1, /*parallel=*/false); });
    const double parallel = time_seconds(
        [&] { hsc::build_spline_corpus(basis, params, 1, /*parallel=*/true); });
    std::printf("spline corpus labeling (K=40, N=16)\n");
    std::printf("  serial   %8.3f s\n", serial);
    std::printf("  openmp   %8.3f s   speedup %.2fx\n\n", parallel,
                serial / parallel);
  }

  {
    std::vector<hsc::ExperimentConfig> configs;
    for (int n : {4, 6, 8, 10}) {
      hsc::ExperimentConfig config;
      config.problem = hsc::Problem::Homogeneous;
      config.n = n;
      config.dt = 1e-6;
      config.policy.kind = hsc::PolicyKind::ExactLaw;
      configs.push_back(config);
    }
    const double serial =
        time_seconds([&] { hsc::run_batch(configs, /*parallel=*/false); });
    const double parallel =
        time_seconds([&] { hsc::run_batch(configs, /*parallel=*/true); });
    std::printf("experiment batch (4 exact-law runs, dt = 1e-6)\n");
    std::printf("  serial   %8.3f s\n", serial);
    std::printf("  openmp   %8.3f s   speedup %.2fx\n", parallel,
                serial / parallel);
  }
  return 0;
}
