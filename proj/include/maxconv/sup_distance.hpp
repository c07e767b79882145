#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "maxconv/cdf.hpp"
#include "maxconv/util.hpp"

namespace maxconv {

/// Certified enclosure of sup |F - G| over an interval.
/// lo is attained at witness_x; hi is a rigorous upper bound (assuming
/// only that F and G are non-decreasing). On convergence hi - lo <= tol.
struct SupBracket {
  double lo = 0.0;
  double hi = 0.0;
  double witness_x = kNaN;
  double x_lo = 0.0, x_hi = 0.0;  // interval actually subdivided
  double head_bound = 0.0;        // closure over (region_lo, x_lo]
  double tail_bound = 0.0;        // closure over [x_hi, region_hi)
  std::size_t cells_used = 0;
  bool converged = true;
};

struct SupOptions {
  double tol = 1e-9;
  /// When >= 0: stop as soon as hi is certified <= this value. The bracket
  /// stays valid but hi - lo may exceed tol. Used for cheap bound asserts.
  double stop_below = -1.0;
  std::size_t cell_budget = 10'000'000;
  int seed_points = 33;
};

namespace detail {

struct SupCell {
  double a, b, fa, fb, ga, gb;

  // For x in [a,b]:  F(x)-G(x) <= F(b)-G(a)  and  G(x)-F(x) <= G(b)-F(a).
  double ub() const { return std::max({fb - ga, gb - fa, 0.0}); }
};

inline double split_point(double a, double b) {
  // Geometric midpoint on wide positive cells, arithmetic otherwise.
  if (a > 0.0 && b > 8.0 * a) return std::sqrt(a) * std::sqrt(b);
  return 0.5 * (a + b);
}

}  // namespace detail

/// Adaptive branch-and-bound bracket of sup_{x in [x_lo, x_hi]} |F(x)-G(x)|
/// for non-decreasing F, G. Per cell the certified bound is
/// max{F(b)-G(a), G(b)-F(a)}+; cells are split depth-first until every
/// remaining cell's bound is within tol of the best sampled value (or the
/// early-stop threshold is met). Exceeding the cell budget returns a valid
/// but non-converged bracket.
inline SupBracket sup_distance(const Cdf& F, const Cdf& G, double x_lo, double x_hi,
                               const SupOptions& opt) {
  if (!(x_lo <= x_hi) || !std::isfinite(x_lo) || !std::isfinite(x_hi))
    throw std::domain_error("sup_distance: need finite x_lo <= x_hi");
  if (!(opt.tol > 0.0)) throw std::domain_error("sup_distance: tol must be > 0");

  SupBracket out;
  out.x_lo = x_lo;
  out.x_hi = x_hi;
  if (same_function(F, G)) return out;  // identical views: distance is exactly 0

  double lo = 0.0, witness = x_lo;
  const auto sample = [&](double x, double f, double g) {
    const double d = std::fabs(f - g);
    if (d > lo) {
      lo = d;
      witness = x;
    }
  };

  const double f_lo = F.cdf(x_lo), g_lo = G.cdf(x_lo);
  const double f_hi = F.cdf(x_hi), g_hi = G.cdf(x_hi);
  sample(x_lo, f_lo, g_lo);
  sample(x_hi, f_hi, g_hi);
  for (int i = 1; i + 1 < opt.seed_points; ++i) {
    const double w = static_cast<double>(i) / (opt.seed_points - 1);
    const double x = x_lo > 0.0 && x_hi > 8.0 * x_lo
                         ? std::exp((1.0 - w) * std::log(x_lo) + w * std::log(x_hi))
                         : x_lo + w * (x_hi - x_lo);
    sample(x, F.cdf(x), G.cdf(x));
  }

  double settled_hi = 0.0;  // max bound over cells no longer refined
  const auto prune_level = [&] { return std::max(lo + opt.tol, opt.stop_below); };

  std::vector<detail::SupCell> stack;
  stack.reserve(256);
  if (x_lo < x_hi) stack.push_back({x_lo, x_hi, f_lo, f_hi, g_lo, g_hi});

  std::size_t used = 0;
  bool budget_hit = false;
  while (!stack.empty()) {
    const detail::SupCell cell = stack.back();
    stack.pop_back();
    const double ub = cell.ub();
    if (ub <= prune_level()) {
      settled_hi = std::max(settled_hi, ub);
      continue;
    }
    if (used >= opt.cell_budget) {
      budget_hit = true;
      settled_hi = std::max(settled_hi, ub);
      continue;
    }
    const double m = detail::split_point(cell.a, cell.b);
    if (!(m > cell.a) || !(m < cell.b)) {  // resolution floor
      settled_hi = std::max(settled_hi, ub);
      continue;
    }
    ++used;
    const double fm = F.cdf(m), gm = G.cdf(m);
    sample(m, fm, gm);
    detail::SupCell left{cell.a, m, cell.fa, fm, cell.ga, gm};
    detail::SupCell right{m, cell.b, fm, cell.fb, gm, cell.gb};
    // Explore the larger bound first so lo tightens early.
    if (left.ub() > right.ub()) std::swap(left, right);
    stack.push_back(left);
    stack.push_back(right);
  }

  out.lo = lo;
  out.hi = std::max(settled_hi, lo);
  out.witness_x = witness;
  out.cells_used = used;
  out.converged = !budget_hit;
  return out;
}

inline SupBracket sup_distance(const Cdf& F, const Cdf& G, double x_lo, double x_hi,
                               double tol) {
  SupOptions opt;
  opt.tol = tol;
  return sup_distance(F, G, x_lo, x_hi, opt);
}

/// Bracket of sup |F - G| over the open region (region_lo, region_hi),
/// typically (0, inf) or (0, 1). The subdivided interval is cut at the
/// eps / 1-eps quantiles of F and G; the remaining head and tail regions
/// are closed by monotonicity:
///   sup over (region_lo, x_lo]  <=  max{F(x_lo), G(x_lo)}
///   sup over [x_hi, region_hi)  <=  max{1-F(x_hi), 1-G(x_hi)}
/// and the final hi is the max of the three regional bounds.
inline SupBracket sup_distance_closed(const Cdf& F, const Cdf& G, double region_lo,
                                      double region_hi, const SupOptions& opt,
                                      double quantile_eps = 1e-8) {
  if (!(quantile_eps > 0.0 && quantile_eps < 0.5))
    throw std::domain_error("sup_distance_closed: quantile_eps outside (0, 0.5)");
  if (same_function(F, G)) return SupBracket{};
  if (!F.has_quantile() || !G.has_quantile())
    throw std::domain_error("sup_distance_closed: both CDFs need quantile channels");

  double x_lo = std::min(F.quantile(quantile_eps), G.quantile(quantile_eps));
  x_lo = std::max(x_lo, region_lo);
  double x_hi = std::max(F.quantile(1.0 - quantile_eps), G.quantile(1.0 - quantile_eps));
  if (std::isfinite(region_hi)) x_hi = region_hi;  // engine covers up to the edge
  if (!std::isfinite(x_hi)) x_hi = std::max({x_lo, 1.0});
  if (x_lo > x_hi) x_lo = x_hi;

  SupBracket b = sup_distance(F, G, x_lo, x_hi, opt);
  if (x_lo > region_lo) b.head_bound = std::max(F.cdf(x_lo), G.cdf(x_lo));
  if (!std::isfinite(region_hi)) b.tail_bound = std::max(F.survival(x_hi), G.survival(x_hi));
  b.hi = std::max({b.hi, b.head_bound, b.tail_bound});
  return b;
}

}  // namespace maxconv
