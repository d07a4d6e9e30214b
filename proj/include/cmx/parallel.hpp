#ifndef CMX_PARALLEL_HPP
#define CMX_PARALLEL_HPP

#include <algorithm>
#include <functional>

#include "cmx/types.hpp"

namespace cmx {

/// Runs body(0..n-1) either on the plain serial reference path or via an
/// OpenMP static-schedule loop.  Callers write results into preallocated
/// per-trial slots and reduce serially afterwards, so both paths produce
/// bit-identical output for any thread count.
inline void run_trials(int n, ExecMode mode, int threads, const std::function<void(int)>& body) {
    if (mode == ExecMode::serial) {
        for (int t = 0; t < n; ++t) body(t);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(threads, 1))
#endif
    for (int t = 0; t < n; ++t) body(t);
}

}  // namespace cmx

#endif  // CMX_PARALLEL_HPP
