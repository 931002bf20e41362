#include "spinrsc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <fmt/format.h>

#include "spinrsc/errors.hpp"

namespace spinrsc {

namespace {

constexpr double kDegenerateGap = 1e-13;
constexpr double kTieTolerance = 1e-12;

// Unit eigenvector of the Hermitian 2x2 matrix m for eigenvalue `value`.
Eigen::Vector2cd hermitian_eigenvector(const Eigen::Matrix2cd& m, double value) {
  const Eigen::Vector2cd x{m(0, 1), value - m(0, 0)};
  const Eigen::Vector2cd y{value - m(1, 1), m(1, 0)};
  const Eigen::Vector2cd v = x.squaredNorm() >= y.squaredNorm() ? x : y;
  return v.normalized();
}

// Fixes the global phase: first component real non-negative, or the second
// when the first vanishes.
Eigen::Vector2cd fix_phase(Eigen::Vector2cd v) {
  const cplx pivot = std::abs(v(0)) > 1e-12 ? v(0) : v(1);
  return v * std::polar(1.0, -std::arg(pivot));
}

}  // namespace

Eigen::Matrix2cd SvdTriple::reconstruct() const {
  Eigen::Matrix2cd lam0 = Eigen::Matrix2cd::Zero();
  lam0(0, 0) = lam.lam_minus;
  lam0(1, 1) = lam.lam_plus;
  return v0.adjoint() * lam0 * u;
}

SingularPair singular_values(const AmplitudeMatrixP& p) {
  const double tr = p.p.squaredNorm();
  const double det_abs = std::abs(p.p.determinant());
  // tr^2 - 4|det|^2 written on the Gram matrix, free of cancellation.
  const Eigen::Matrix2cd gram = p.p.adjoint() * p.p;
  const double diag_gap = gram(0, 0).real() - gram(1, 1).real();
  const double disc = diag_gap * diag_gap + 4.0 * std::norm(gram(0, 1));
  const double plus_sq = 0.5 * (tr + std::sqrt(disc));
  if (plus_sq <= 0.0) return {0.0, 0.0};
  const double lam_plus = std::sqrt(plus_sq);
  // lam_minus * lam_plus = |det P| avoids the cancellation in (tr - sqrt(disc)).
  return {std::min(det_abs / lam_plus, lam_plus), lam_plus};
}

SvdTriple svd_decompose(const AmplitudeMatrixP& p) {
  SvdTriple out;
  out.lam = singular_values(p);
  const double plus = out.lam.lam_plus;
  const double minus = out.lam.lam_minus;
  if (plus == 0.0) return out;

  const Eigen::Matrix2cd gram = p.p.adjoint() * p.p;
  Eigen::Vector2cd e_plus;
  if (plus * plus - minus * minus <= kDegenerateGap * std::max(1.0, plus * plus)) {
    e_plus = Eigen::Vector2cd{0.0, 1.0};
  } else {
    e_plus = fix_phase(hermitian_eigenvector(gram, plus * plus));
  }
  Eigen::Vector2cd e_minus{-std::conj(e_plus(1)), std::conj(e_plus(0))};

  const Eigen::Vector2cd f = p.p * e_plus;
  const double r = f.norm();
  out.v0 << f(1), -f(0), std::conj(f(0)), std::conj(f(1));
  out.v0 /= r;

  // Rotate e_minus so that v0 P e_minus = (lam_minus, 0) with lam_minus real.
  const cplx w = (out.v0.row(0) * p.p * e_minus)(0, 0);
  if (std::abs(w) > 0.0) e_minus *= std::polar(1.0, -std::arg(w));

  out.u.row(0) = e_minus.adjoint();
  out.u.row(1) = e_plus.adjoint();
  return out;
}

SenderState optimal_sender_state(const SvdTriple& svd) {
  if (!(svd.lam.lam_plus > 0.0)) {
    throw DomainError("degenerate protocol: largest singular value is zero, no excitation reaches the extended receiver");
  }
  const Eigen::Vector2cd a = svd.u.adjoint() * Eigen::Vector2cd{0.0, 1.0};
  return {0.0, a(0), a(1)};
}

double rmax_no_v(const AmplitudeMatrixP& p) { return p.bottom_row_norm_sq(); }

double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tolerance) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

std::size_t first_significant_peak(std::span<const double> v, double significance, double t_max) {
  const double global = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  if (global > 0.0 && std::isfinite(global)) {
    const double floor = significance * global;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] >= floor) return i;
    }
  }
  throw NumericalError(fmt::format(
      "no local maximum of the objective in the window [0, {}]; enlarge the time window", t_max));
}

TimeMaximum refine(const std::function<double(double)>& f, std::size_t peak, const TimeSearchOptions& options) {
  const double lo = static_cast<double>(peak - 1) * options.dt;
  const double hi = static_cast<double>(peak + 1) * options.dt;
  const double t0 = golden_section_max(f, lo, hi, options.tolerance);
  return {t0, f(t0)};
}

std::size_t sample_count(double t_max, double dt) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (!(t_max > 0.0)) throw DomainError("time window must be positive");
  return static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
}

}  // namespace

TimeMaximum first_maximum(const std::function<double(double)>& objective, double t_max,
                          const TimeSearchOptions& options) {
  const std::size_t count = sample_count(t_max, options.dt);
  std::vector<double> values(count);
  kernels::for_each_index(
      count, [&](std::size_t k) { values[k] = objective(static_cast<double>(k) * options.dt); }, options.exec);
  return refine(objective, first_significant_peak(values, options.significance, t_max), options);
}

TimeMaximum maximize_over_time(const SpectralDecomposition& spec, Objective objective,
                               const TimeSearchOptions& options) {
  const AmplitudeEvaluator eval(spec);
  const double t_max = options.t_max > 0.0 ? options.t_max : 4.0 * spec.size();
  const std::size_t count = sample_count(t_max, options.dt);
  const auto values = kernels::scan_objective(eval, objective, options.dt, count, options.exec);
  const auto f = [&](double t) { return objective_value(eval.at(t), objective); };
  return refine(f, first_significant_peak(values, options.significance, t_max), options);
}

Eigen::Matrix2cd OptimalProtocol::receiver_transform() const {
  return with_v ? svd.v0 : Eigen::Matrix2cd::Identity();
}

OptimalProtocol optimize_protocol(const SpectralDecomposition& spec, CouplingKind kind, bool with_v,
                                  const TimeSearchOptions& options) {
  OptimalProtocol out;
  out.kind = kind;
  out.with_v = with_v;
  const auto best = maximize_over_time(spec, with_v ? Objective::LamPlusSq : Objective::RowNormSq, options);
  out.t0 = best.t0;
  out.p = amplitude_matrix(spec, best.t0);
  out.svd = svd_decompose(out.p);
  if (with_v) {
    out.a_opt = optimal_sender_state(out.svd);
    out.r_max_sq = out.svd.lam.lam_plus * out.svd.lam.lam_plus;
  } else {
    const Eigen::Vector2cd row = out.p.p.row(1).adjoint();
    const double norm = row.norm();
    if (!(norm > 0.0)) throw DomainError("degenerate protocol: no excitation reaches node N");
    out.a_opt = {0.0, row(0) / norm, row(1) / norm};
    out.r_max_sq = rmax_no_v(out.p);
  }
  return out;
}

SweepModel parse_sweep_model(std::string_view name) {
  if (name == "nn") return SweepModel::NN;
  if (name == "all") return SweepModel::AllNodeNoV;
  if (name == "all+v") return SweepModel::AllNodeWithV;
  throw DomainError(fmt::format("unknown sweep model '{}' (expected nn, all or all+v)", name));
}

std::string_view to_string(SweepModel model) {
  switch (model) {
    case SweepModel::NN: return "nn";
    case SweepModel::AllNodeNoV: return "all";
    case SweepModel::AllNodeWithV: return "all+v";
  }
  return "?";
}

CouplingKind coupling_of(SweepModel model) {
  return model == SweepModel::NN ? CouplingKind::NearestNeighbor : CouplingKind::AllNode;
}

bool uses_v(SweepModel model) { return model == SweepModel::AllNodeWithV; }

std::vector<SweepRow> sweep(int n_min, int n_max, std::span<const SweepModel> models,
                            const TimeSearchOptions& options) {
  if (n_min < 4 || n_max > 200 || n_min > n_max) {
    throw DomainError(fmt::format("sweep range [{}, {}] must lie within [4, 200]", n_min, n_max));
  }
  const std::size_t per_model = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<SweepRow> rows(per_model * models.size());
  TimeSearchOptions inner = options;
  inner.exec = Execution::Serial;
  kernels::for_each_index(
      rows.size(),
      [&](std::size_t i) {
        const SweepModel model = models[i / per_model];
        const int n = n_min + static_cast<int>(i % per_model);
        try {
          const auto spec = decompose_chain({coupling_of(model), n});
          const auto best =
              maximize_over_time(spec, uses_v(model) ? Objective::LamPlusSq : Objective::RowNormSq, inner);
          rows[i] = {n, model, best.t0, best.value};
        } catch (const std::exception& e) {
          throw DomainError(fmt::format("sweep row n={} model={}: {}", n, to_string(model), e.what()));
        }
      },
      options.exec);
  return rows;
}

std::vector<CriticalLength> critical_length(std::span<const SweepRow> rows, double threshold) {
  std::vector<SweepModel> order;
  std::map<SweepModel, std::map<int, double>> by_model;
  for (const auto& row : rows) {
    if (!by_model.contains(row.model)) order.push_back(row.model);
    by_model[row.model][row.n] = row.r_max_sq;
  }

  std::vector<CriticalLength> out;
  for (const SweepModel model : order) {
    const auto& series = by_model[model];
    const int first = series.begin()->first;
    const int last = series.rbegin()->first;
    if (static_cast<int>(series.size()) != last - first + 1) {
      throw DomainError(fmt::format("rows for model {} do not cover a contiguous n-range", to_string(model)));
    }
    CriticalLength cl{model, std::nullopt, false};
    for (const auto& [n, r] : series) {
      if (r >= threshold - kTieTolerance) cl.n = n;
    }
    if (cl.n) {
      if (*cl.n == last) {
        throw DomainError(fmt::format(
            "model {} still reaches {} at n={}; extend the range to bracket the crossing", to_string(model),
            threshold, last));
      }
      const int n = *cl.n;
      const double prev = series.contains(n - 1) ? series.at(n - 1) : series.at(n);
      cl.monotone_near_crossing = prev >= series.at(n) && series.at(n) >= series.at(n + 1);
    }
    out.push_back(cl);
  }
  return out;
}

}  // namespace spinrsc
