#pragma once

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace logtr {

// Fan-out over independent jobs (checks, residue families, FD runs). Results
// land in pre-sized slots, so the output is identical to the serial loop;
// jobs must be pure. threads = 1 gives the serial reference path.
template <class F>
void parallel_for(long n, int threads, F&& body) {
#ifdef _OPENMP
  if (threads != 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (long i = 0; i < n; ++i) body(i);
}

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace logtr
