#include "spinrsc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace spinrsc {

double objective_value(const Eigen::Matrix2cd& p, Objective objective) {
  if (objective == Objective::RowNormSq) {
    return p.row(1).squaredNorm();
  }
  // Largest eigenvalue of P^+P: (tr + sqrt(tr^2 - 4|det P|^2)) / 2.
  const double tr = p.squaredNorm();
  const double det_sq = std::norm(p.determinant());
  const double disc = std::max(0.0, tr * tr - 4.0 * det_sq);
  return 0.5 * (tr + std::sqrt(disc));
}

namespace kernels {

int thread_budget() {
  if (const char* env = std::getenv("SPINRSC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
}

std::vector<double> scan_objective(const AmplitudeEvaluator& eval, Objective objective, double dt,
                                   std::size_t count, Execution exec) {
  std::vector<double> values(count);
  for_each_index(
      count,
      [&](std::size_t k) { values[k] = objective_value(eval.at(static_cast<double>(k) * dt), objective); },
      exec);
  return values;
}

}  // namespace kernels
}  // namespace spinrsc
