#pragma once

// Data-parallel loops. Every kernel has a serial reference path selected by
// Execution::Serial; both paths evaluate the same per-index function, so
// their outputs are bit-identical and the serial one is kept for testing and
// benchmarking.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinrsc/propagate.hpp"

namespace spinrsc {

enum class Execution { Serial, Parallel };

/// Quantity maximized over time: the largest singular value squared of P
/// (receiver-side transform enabled) or |p_N1|^2 + |p_N2|^2 (no transform).
enum class Objective { LamPlusSq, RowNormSq };

double objective_value(const Eigen::Matrix2cd& p, Objective objective);

namespace kernels {

/// Thread budget: SPINRSC_THREADS when set to a positive integer, else the
/// OpenMP default.
int thread_budget();

/// Calls fn(i) for i in [0, count). Exceptions thrown by fn are rethrown on
/// the calling thread (the first one caught wins).
template <class Fn>
void for_each_index(std::size_t count, Fn&& fn, Execution exec = Execution::Parallel) {
  if (exec == Execution::Serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_budget())
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(spinrsc_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

/// objective(t_k) at t_k = k * dt, k = 0 .. count-1.
std::vector<double> scan_objective(const AmplitudeEvaluator& eval, Objective objective, double dt,
                                   std::size_t count, Execution exec = Execution::Parallel);

}  // namespace kernels
}  // namespace spinrsc
