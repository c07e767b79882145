#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxconv/cdf.hpp"
#include "maxconv/parallel.hpp"
#include "maxconv/util.hpp"

namespace maxconv {

/// CDF values closer than this to 0 or 1 are treated as poles of the
/// index functionals.
inline constexpr double kPoleFloor = 1e-300;

/// A non-increasing bound function with an explicit validity threshold:
/// the bound is only asserted for x >= valid_from.
struct AuxFn {
  std::function<double(double)> fn;
  double valid_from = 0.0;

  double operator()(double x) const { return fn(x); }
};

/// The bound alpha/(x^alpha - 1), valid from 2^{1/alpha} (where it has
/// decayed to alpha). Dominates the index deviation of both the Frechet
/// and the Dagum family with tail index alpha.
inline AuxFn power_tail_aux(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("power_tail_aux: alpha must be > 0");
  AuxFn g;
  g.fn = [alpha](double x) {
    if (!(x > 1.0)) return kInf;
    return alpha / std::expm1(alpha * std::log(x));
  };
  g.valid_from = std::pow(2.0, 1.0 / alpha);
  return g;
}

namespace detail {

// r(u) = -log u - (1 - u) expressed through the survival value s = 1 - u,
// i.e. -log1p(-s) - s. Series for small s keeps full relative precision.
inline double log_survival_gap_from_survival(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("log_survival_gap: u outside (0,1)");
  if (s < 0.25) {
    // sum_{k>=2} s^k / k
    double term = s * s, acc = term / 2.0;
    for (int k = 3; k < 64; ++k) {
      term *= s;
      const double add = term / k;
      acc += add;
      if (add < acc * 1e-18) break;
    }
    return acc;
  }
  return -std::log1p(-s) - s;
}

}  // namespace detail

/// r(u) = -log u - (1 - u), the gap between the two survival measures.
/// Non-increasing in u; ~ (1-u)^2/2 near u = 1.
inline double log_survival_gap(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("log_survival_gap: u outside (0,1)");
  if (u >= 0.75) return detail::log_survival_gap_from_survival(1.0 - u);
  return -std::log(u) - (1.0 - u);
}

/// r(e^{-y}) = y + e^{-y} - 1 for y > 0, accurate for small y where the
/// direct form cancels. Used when -log u is known exactly (e.g. y = 1/n).
inline double log_survival_gap_exp(double y) {
  if (!(y > 0.0)) throw std::domain_error("log_survival_gap_exp: y must be > 0");
  if (y < 0.5) {
    // sum_{k>=2} (-y)^k / k!
    double term = y * y / 2.0, acc = term;
    for (int k = 3; k < 40; ++k) {
      term *= -y / k;
      acc += term;
      if (std::fabs(term) < acc * 1e-18) break;
    }
    return acc;
  }
  return y + std::expm1(-y);
}

/// ell(u) = r(u) / (-log u) in (0,1); strictly decreasing, ell(0+) = 1,
/// ell(1-) = 0.
inline double log_survival_gap_ratio(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("log_survival_gap_ratio: u outside (0,1)");
  if (u >= 0.75) {
    const double s = 1.0 - u;
    return detail::log_survival_gap_from_survival(s) / (-std::log1p(-s));
  }
  const double nl = -std::log(u);
  return (nl - (1.0 - u)) / nl;
}

namespace detail {

inline void check_pole(const Cdf& f, double cdf, double surv, double x) {
  if (!(cdf > kPoleFloor) || !(surv > kPoleFloor))
    throw pole_error("index functional pole: " + f.name() + " at x=" + std::to_string(x) +
                     " has F=" + std::to_string(cdf));
}

}  // namespace detail

/// Deviation of the survival-normalized index from alpha:
/// x F'(x) / (F(x)(1 - F(x))) - alpha. Zero exactly when F is the Dagum
/// law with tail index alpha.
inline double von_mises_deviation(const Cdf& f, double alpha, double x) {
  const double c = f.cdf(x), s = f.survival(x);
  detail::check_pole(f, c, s, x);
  return x * f.density(x) / (c * s) - alpha;
}

/// Deviation of the log-normalized index from alpha:
/// x F'(x) / (F(x)(-log F(x))) - alpha. Zero exactly when F is the Frechet
/// law with tail index alpha.
inline double log_von_mises_deviation(const Cdf& f, double alpha, double x) {
  const double c = f.cdf(x), s = f.survival(x);
  detail::check_pole(f, c, s, x);
  const double neg_log = s < 0.5 ? -std::log1p(-s) : -std::log(c);
  return x * f.density(x) / (c * neg_log) - alpha;
}

/// g(x) + alpha * ell(F(x)): dominates |log_von_mises_deviation| wherever
/// |von_mises_deviation| <= g. Non-increasing in x alongside g.
inline double log_von_mises_bound(const Cdf& f, double alpha, const AuxFn& g, double x) {
  if (!(x >= g.valid_from))
    throw std::domain_error("log_von_mises_bound: x below the bound's validity threshold");
  const double s = f.survival(x);
  if (!(s > kPoleFloor) || !(s < 1.0))
    throw pole_error("log_von_mises_bound: survival pole at x=" + std::to_string(x));
  const double ratio =
      detail::log_survival_gap_from_survival(s) / (-std::log1p(-s));
  return g(x) + alpha * ratio;
}

struct VonMisesViolation {
  std::size_t index;
  double x;
  double deviation;  // k value
  double bound;      // g value
};

struct VonMisesPointError {
  std::size_t index;
  double x;
  std::string what;
};

/// Pointwise verification record for |k| <= g over a grid.
struct VonMisesReport {
  std::string cdf_name;
  double alpha = 0.0;
  std::vector<double> grid;
  std::vector<double> deviation;  // k values (NaN where evaluation failed)
  std::vector<double> bound;      // g values
  double ratio_max = 0.0;         // max |k| / g
  std::vector<VonMisesViolation> violations;
  std::vector<VonMisesPointError> errors;

  bool passed() const { return violations.empty() && errors.empty(); }
};

/// Checks |von_mises_deviation| <= g on the given grid (all points must be
/// >= g.valid_from). Pole failures become per-point diagnostics, not errors.
inline VonMisesReport verify_von_mises(const Cdf& f, double alpha, const AuxFn& g,
                                       const std::vector<double>& grid) {
  VonMisesReport rep;
  rep.cdf_name = f.name();
  rep.alpha = alpha;
  rep.grid = grid;
  rep.deviation.assign(grid.size(), kNaN);
  rep.bound.assign(grid.size(), kNaN);
  std::vector<std::string> errs(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double x = grid[i];
    if (!(x >= g.valid_from)) {
      errs[i] = "below valid_from";
      return;
    }
    rep.bound[i] = g(x);
    try {
      rep.deviation[i] = von_mises_deviation(f, alpha, x);
    } catch (const std::exception& e) {
      errs[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!errs[i].empty()) {
      rep.errors.push_back({i, grid[i], errs[i]});
      continue;
    }
    const double k = rep.deviation[i], gv = rep.bound[i];
    const double ratio = k == 0.0 ? 0.0 : std::fabs(k) / gv;  // gv == 0, k != 0 -> inf
    if (ratio > rep.ratio_max) rep.ratio_max = ratio;
    if (!(std::fabs(k) <= gv)) rep.violations.push_back({i, grid[i], k, gv});
  }
  return rep;
}

}  // namespace maxconv
