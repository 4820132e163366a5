#pragma once

#include <functional>

#ifdef HSC_HAVE_OPENMP
#include <omp.h>
#endif

namespace hsc {

inline int max_workers() {
#ifdef HSC_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs body(0..count-1), OpenMP-parallel when `parallel` is set and OpenMP is
/// available, otherwise as the plain serial reference loop. Bodies must be
/// independent; results written by index are deterministic either way.
inline void parallel_for(int count, const std::function<void(int)>& body,
                         bool parallel = true) {
#ifdef HSC_HAVE_OPENMP
  if (parallel && count > 1) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
#else
  (void)parallel;
#endif
  for (int i = 0; i < count; ++i) body(i);
}

}  // namespace hsc
