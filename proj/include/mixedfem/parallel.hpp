#pragma once

#include "mixedfem/common.hpp"

namespace mixedfem {

/// Runs fn(i) for i in [0, n). The parallel path splits the range across
/// OpenMP threads; callers write to disjoint slots only, so both paths give
/// identical results.
template <class Fn>
void for_each_index(int n, ExecPolicy policy, Fn&& fn) {
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) fn(i);
  } else {
    for (int i = 0; i < n; ++i) fn(i);
  }
}

/// Number of OpenMP threads a parallel region would use.
int available_threads();

}  // namespace mixedfem
