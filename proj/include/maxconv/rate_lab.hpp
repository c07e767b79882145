#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxconv/cdf.hpp"
#include "maxconv/families.hpp"
#include "maxconv/parallel.hpp"
#include "maxconv/scaling.hpp"
#include "maxconv/semigroup.hpp"
#include "maxconv/sup_distance.hpp"
#include "maxconv/von_mises.hpp"

namespace maxconv {

/// One measured n in a rate experiment. The three bound columns are the
/// explicitly computable pieces of the convergence-rate estimate:
///   bound_tail     error bound for x >= 1 (free-rate bound plus the
///                  survival carry-over term),
///   bound_interior g(rho(a_n)) / (e (alpha - g(rho(a_n)))),
///   bound_A        alpha (A_n^{-1} - 1).
/// NaN marks a bound that is not yet defined at this n (e.g. the index
/// bound has not dropped below alpha).
struct RateRow {
  std::int64_t n = 0;
  double a_n = 0.0, a_n_prime = 0.0, A_n = 0.0;
  double sup_lo = 0.0, sup_hi = 0.0, witness_x = kNaN;
  double bound_tail = kNaN, bound_interior = kNaN, bound_A = kNaN;
  double n_times_sup = 0.0;  // n * sup_hi
  bool within_bound = false;  // sup_hi <= bound_tail + bound_interior + bound_A
  bool converged = true;
  std::size_t cells_used = 0;
};

struct RateFit {
  double slope = kNaN;
  double intercept = kNaN;
  double residual = kNaN;  // max |log sup - fit|
  std::size_t rows_used = 0;
  std::vector<std::int64_t> excluded;  // rows with sup <= 0
};

/// Least squares on (log n, log sup). Requires >= 4 usable rows.
inline RateFit fit_log_log(const std::vector<std::pair<std::int64_t, double>>& rows) {
  RateFit fit;
  std::vector<double> xs, ys;
  for (const auto& [n, sup] : rows) {
    if (!(sup > 0.0) || !std::isfinite(sup)) {
      fit.excluded.push_back(n);
      continue;
    }
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(sup));
  }
  fit.rows_used = xs.size();
  if (xs.size() < 4) return fit;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.residual = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.residual = std::max(fit.residual,
                            std::fabs(ys[i] - (fit.intercept + fit.slope * xs[i])));
  return fit;
}

struct RateConfig {
  Kind kind = Kind::boolean;  // boolean or free power maps
  std::vector<std::int64_t> n_list;
  double tol = 1e-7;            // bracket tolerance per row
  double quantile_eps = 1e-8;   // interval cut for the sup engine
  std::size_t cell_budget = 10'000'000;
  /// Check |index deviation| <= g on a geometric grid before measuring
  /// (skipped when the base CDF carries no density).
  bool check_von_mises = true;
};

struct RateReport {
  std::string family;
  Kind kind = Kind::boolean;
  double alpha = 0.0;
  double tol = 0.0;
  double quantile_eps = 0.0;
  std::vector<RateRow> rows;  // sorted by n
  RateFit fit;                // valid only when >= 4 usable rows
  std::optional<std::int64_t> onset_n0;  // first n from which within_bound holds onward
  /// For the free kind with a Frechet base: sup_hi <= 1/n + tol at every n.
  std::optional<bool> free_frechet_bound_ok;
};

namespace detail {

// u(a_n) = g(a_n) + alpha * ell(F(a_n)) with F(a_n) = e^{-1/n}, so the
// ratio term is exactly n * r(e^{-1/n}).
inline double index_bound_at_scale(double alpha, const AuxFn& g, double a_n, double n) {
  if (!(a_n >= g.valid_from)) return kNaN;
  return g(a_n) + alpha * n * log_survival_gap_exp(1.0 / n);
}

// Free-rate tail estimate: u(a_n)/(e(alpha - u(a_n))) + n r(e^{-1/n}),
// defined once u(a_n) < alpha.
inline double free_tail_bound(double alpha, const AuxFn& g, double a_n, double n) {
  const double u = index_bound_at_scale(alpha, g, a_n, n);
  if (!(u < alpha)) return kNaN;
  return u / (kE * (alpha - u)) + n * log_survival_gap_exp(1.0 / n);
}

inline double interior_bound_value(double alpha, const CrossoverScale& cross, double a_n) {
  double g_rho = kNaN;
  try {
    g_rho = cross.aux()(cross.invert(a_n));
  } catch (const std::domain_error&) {
    return kNaN;
  }
  if (!(g_rho < alpha)) return kNaN;
  return g_rho / (kE * (alpha - g_rho));
}

inline std::optional<std::int64_t> onset_of(const std::vector<RateRow>& rows) {
  std::optional<std::int64_t> onset;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (!it->within_bound) break;
    onset = it->n;
  }
  return onset;
}

}  // namespace detail

namespace detail {

template <typename ScaleFn>
RateReport run_rate_experiment(const Cdf& f, std::string family, double alpha,
                               const AuxFn& g, const RateConfig& cfg, ScaleFn scale_at,
                               bool frechet_base) {
  if (cfg.kind == Kind::classical)
    throw std::domain_error("rate_experiment: classical powers are max-stable, nothing to rate");
  if (cfg.n_list.empty()) throw std::domain_error("rate_experiment: empty n list");
  if (!(alpha > 0.0)) throw std::domain_error("rate_experiment: alpha must be > 0");

  RateReport rep;
  rep.family = std::move(family);
  rep.kind = cfg.kind;
  rep.alpha = alpha;
  rep.tol = cfg.tol;
  rep.quantile_eps = cfg.quantile_eps;

  std::vector<std::int64_t> ns = cfg.n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  if (cfg.check_von_mises && f.has_density()) {
    const double lo = 1.05 * std::max(g.valid_from, 1e-12);
    const auto grid = geometric_grid(lo, std::max(1e6, 8.0 * lo), 128);
    const auto vm = verify_von_mises(f, alpha, g, grid);
    if (!vm.violations.empty())
      throw std::domain_error(
          "rate_experiment: the auxiliary bound fails to dominate the index deviation at x=" +
          std::to_string(vm.violations.front().x));
  }

  const Cdf limit = make_cdf(EvFamily(cfg.kind, alpha));
  const CrossoverScale cross(alpha, g);

  rep.rows.resize(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const std::int64_t n = ns[i];
    const double nn = static_cast<double>(n);
    RateRow row;
    row.n = n;
    const ScalingTriple sc = scale_at(n);
    row.a_n = sc.a_n;
    row.a_n_prime = sc.a_n_prime;
    row.A_n = sc.A_n;

    const Cdf powered = rescale(power_cdf(f, nn, cfg.kind), sc.a_n);
    SupOptions opt;
    opt.tol = cfg.tol;
    opt.cell_budget = cfg.cell_budget;
    const SupBracket b = sup_distance_closed(powered, limit, 0.0, kInf, opt, cfg.quantile_eps);
    row.sup_lo = b.lo;
    row.sup_hi = b.hi;
    row.witness_x = b.witness_x;
    row.converged = b.converged;
    row.cells_used = b.cells_used;
    row.n_times_sup = nn * b.hi;

    const double free_tail = detail::free_tail_bound(alpha, g, sc.a_n, nn);
    row.bound_tail = cfg.kind == Kind::boolean ? free_tail - std::expm1(-1.0 / nn)
                                               : free_tail;  // -expm1 adds 1-F(a_n)
    row.bound_interior = detail::interior_bound_value(alpha, cross, sc.a_n);
    row.bound_A = alpha * (1.0 - sc.A_n) / sc.A_n;
    row.within_bound = std::isfinite(row.bound_tail) && std::isfinite(row.bound_interior) &&
                       row.sup_hi <= row.bound_tail + row.bound_interior + row.bound_A;
    rep.rows[i] = row;
  });

  std::vector<std::pair<std::int64_t, double>> pts;
  for (const auto& r : rep.rows) pts.emplace_back(r.n, r.sup_hi);
  rep.fit = fit_log_log(pts);
  rep.onset_n0 = detail::onset_of(rep.rows);

  if (cfg.kind == Kind::free && frechet_base) {
    bool ok = true;
    for (const auto& r : rep.rows)
      ok = ok && r.sup_hi <= 1.0 / static_cast<double>(r.n) + cfg.tol;
    rep.free_frechet_bound_ok = ok;
  }
  return rep;
}

}  // namespace detail

/// Measures sup_x |F^{(power n)}(a_n x) - limit(x)| over (0, inf) for each n,
/// against the matching boolean/free limit law, together with every
/// explicitly computable bound term. Rows run in parallel.
inline RateReport rate_experiment(const EvFamily& base, const AuxFn& g, const RateConfig& cfg) {
  return detail::run_rate_experiment(
      make_cdf(base), family_name(base), base.alpha, g, cfg,
      [&base](std::int64_t n) { return scaling(base, n); },
      base.kind == Kind::classical && base.alpha > 0.0);
}

/// Same experiment for a user-supplied CDF on [0, inf) with tail index alpha.
/// Scalings come from the quantile channel.
inline RateReport rate_experiment(const Cdf& base, double alpha, const AuxFn& g,
                                  const RateConfig& cfg) {
  return detail::run_rate_experiment(
      base, base.name(), alpha, g, cfg,
      [base](std::int64_t n) { return scaling(base, n); }, false);
}

struct InteriorRow {
  std::int64_t n = 0;
  double sup_lo = 0.0, sup_hi = 0.0;
  double bound = kNaN;  // g(rho(a_n)) / (e (alpha - g(rho(a_n))))
  bool ok = false;
};

struct InteriorReport {
  double alpha = 0.0;
  std::vector<InteriorRow> rows;
  std::optional<std::int64_t> onset_n0;
};

/// Interior check: sup over (0,1) of |F^{boolean n}(a_n' x) - limit(x)|
/// against the crossover bound, rows in parallel.
inline InteriorReport interior_bound_experiment(const EvFamily& base, const AuxFn& g,
                                                const std::vector<std::int64_t>& n_list,
                                                double tol) {
  const double alpha = base.alpha;
  const Cdf f = make_cdf(base);
  const Cdf limit = make_cdf(EvFamily(Kind::boolean, alpha));
  const CrossoverScale cross(alpha, g);

  std::vector<std::int64_t> ns = n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  InteriorReport rep;
  rep.alpha = alpha;
  rep.rows.resize(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const std::int64_t n = ns[i];
    const ScalingTriple sc = scaling(base, n);
    InteriorRow row;
    row.n = n;
    const Cdf powered = rescale(power_cdf(f, static_cast<double>(n), Kind::boolean),
                                sc.a_n_prime);
    SupOptions opt;
    opt.tol = tol;
    const SupBracket b = sup_distance_closed(powered, limit, 0.0, 1.0, opt);
    row.sup_lo = b.lo;
    row.sup_hi = b.hi;
    row.bound = detail::interior_bound_value(alpha, cross, sc.a_n);
    row.ok = std::isfinite(row.bound) && row.sup_hi <= row.bound;
    rep.rows[i] = row;
  });
  std::optional<std::int64_t> onset;
  for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it) {
    if (!it->ok) break;
    onset = it->n;
  }
  rep.onset_n0 = onset;
  return rep;
}

struct SandwichPoint {
  double x = 0.0;
  bool admissible = false;
  double lower = kNaN, value = kNaN, upper = kNaN;
  double slack = kNaN;  // min(value - lower, upper - value)
  bool pass = false;
};

struct SandwichReport {
  double alpha = 0.0;
  std::int64_t n = 0;
  double slack_tol = 1e-12;
  std::vector<SandwichPoint> points;
  std::size_t skipped = 0;

  bool passed() const {
    for (const auto& p : points)
      if (p.admissible && !p.pass) return false;
    return true;
  }
};

/// Pointwise two-sided envelope of the n-fold boolean power at scale a_n':
///   Dagum(alpha + g(a_n' x))(x) <= F^{boolean n}(a_n' x) <= Dagum(alpha - g(a_n' x))(x)
/// for x in (0,1). Points where g(a_n' x) >= alpha or a_n' x is below the
/// bound's validity threshold are reported as skipped, not failed.
inline SandwichReport check_sandwich(const EvFamily& base, const AuxFn& g, std::int64_t n,
                                     const std::vector<double>& xs, double slack_tol = 1e-12) {
  const double alpha = base.alpha;
  const Cdf f = make_cdf(base);
  const ScalingTriple sc = scaling(base, n);
  SandwichReport rep;
  rep.alpha = alpha;
  rep.n = n;
  rep.slack_tol = slack_tol;
  rep.points.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    SandwichPoint p;
    p.x = xs[i];
    const double y = sc.a_n_prime * p.x;
    if (p.x > 0.0 && p.x < 1.0 && y >= g.valid_from && g(y) < alpha) {
      p.admissible = true;
      const double gv = g(y);
      p.lower = ev_cdf(EvFamily(Kind::boolean, alpha + gv), p.x);
      p.value = boolean_power(f.cdf(y), static_cast<double>(n));
      p.upper = ev_cdf(EvFamily(Kind::boolean, alpha - gv), p.x);
      p.slack = std::min(p.value - p.lower, p.upper - p.value);
      p.pass = p.slack >= -slack_tol;
    }
    rep.points[i] = p;
  });
  for (const auto& p : rep.points)
    if (!p.admissible) ++rep.skipped;
  return rep;
}

struct DagumLipschitzResult {
  double alpha1 = 0.0, alpha2 = 0.0;
  double sup_lo = 0.0, sup_hi = 0.0;
  double bound = 0.0;  // e^{-1} |a2 - a1| / min(a1, a2)
  bool pass = false;
};

/// Kolmogorov distance of two Dagum laws over (0,1) against the
/// mean-value bound e^{-1} |alpha2 - alpha1| / (alpha1 ^ alpha2).
inline DagumLipschitzResult check_dagum_lipschitz(double alpha1, double alpha2, double tol) {
  DagumLipschitzResult res;
  res.alpha1 = alpha1;
  res.alpha2 = alpha2;
  res.bound = std::exp(-1.0) * std::fabs(alpha2 - alpha1) / std::min(alpha1, alpha2);
  const Cdf d1 = make_cdf(EvFamily(Kind::boolean, alpha1));
  const Cdf d2 = alpha1 == alpha2 ? d1 : make_cdf(EvFamily(Kind::boolean, alpha2));
  SupOptions opt;
  opt.tol = tol;
  const SupBracket b = sup_distance_closed(d1, d2, 0.0, 1.0, opt);
  res.sup_lo = b.lo;
  res.sup_hi = b.hi;
  res.pass = res.sup_hi <= res.bound + tol;
  return res;
}

struct TailChainPoint {
  double x = 0.0;
  double lhs = 0.0;   // |boolean power - Dagum|
  double rhs = 0.0;   // |free power - Pareto| + x^{-alpha} (1 - F(a_n x))
  bool pass = false;
};

struct TailChainReport {
  double alpha = 0.0;
  std::int64_t n = 0;
  std::vector<TailChainPoint> points;

  bool passed() const {
    for (const auto& p : points)
      if (!p.pass) return false;
    return true;
  }
};

/// Pointwise chain for x >= 1: the boolean-vs-Dagum error is dominated by
/// the free-vs-Pareto error plus the survival carry-over term.
inline TailChainReport check_tail_chain(const EvFamily& base, std::int64_t n,
                                        const std::vector<double>& xs,
                                        double slack_tol = 1e-12) {
  const double alpha = base.alpha;
  const Cdf f = make_cdf(base);
  const ScalingTriple sc = scaling(base, n);
  const double nn = static_cast<double>(n);
  TailChainReport rep;
  rep.alpha = alpha;
  rep.n = n;
  rep.points.reserve(xs.size());
  for (double x : xs) {
    if (!(x >= 1.0)) throw std::domain_error("check_tail_chain: grid must lie in [1,inf)");
    TailChainPoint p;
    p.x = x;
    const double y = sc.a_n * x;
    const double u = f.cdf(y), s = f.survival(y);
    const double xa = std::pow(x, -alpha);
    p.lhs = std::fabs(u / (1.0 + (nn - 1.0) * s) - 1.0 / (1.0 + xa));
    // |free power - Pareto| = |x^{-alpha} - n(1-F)| whether or not the
    // free power is clamped at 0.
    p.rhs = std::fabs(xa - nn * s) + xa * s;
    p.pass = p.lhs <= p.rhs + slack_tol;
    rep.points.push_back(p);
  }
  return rep;
}

}  // namespace maxconv
