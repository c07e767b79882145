#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "maxconv/cdf.hpp"
#include "maxconv/families.hpp"
#include "maxconv/von_mises.hpp"

namespace maxconv {

/// Normalization constants of a rate experiment row:
/// F(a_n) = e^{-1/n}, F(a_n') = n/(n+1), A_n = a_n/a_n' in (0,1].
struct ScalingTriple {
  std::int64_t n = 0;
  double a_n = 0.0;
  double a_n_prime = 0.0;
  double A_n = 0.0;
};

/// Closed-form scalings for the families supported on [0, inf).
/// Families with negative support are rejected: the ratio A_n only makes
/// sense for laws on the positive axis.
inline ScalingTriple scaling(const EvFamily& f, std::int64_t n) {
  if (n < 1) throw std::domain_error("scaling: n must be >= 1");
  const double nn = static_cast<double>(n);
  const double a = f.alpha;
  ScalingTriple t;
  t.n = n;
  switch (f.kind) {
    case Kind::classical:  // frechet
      if (!(a > 0)) break;
      t.a_n = std::pow(nn, 1.0 / a);
      t.a_n_prime = std::pow(std::log1p(1.0 / nn), -1.0 / a);
      t.A_n = std::pow(nn * std::log1p(1.0 / nn), 1.0 / a);
      return t;
    case Kind::free:  // pareto: 1 - x^{-a}
      if (!(a > 0)) {
        if (a == 0) {  // exponential
          t.a_n = -std::log(-std::expm1(-1.0 / nn));
          t.a_n_prime = std::log1p(nn);
          t.A_n = t.a_n / t.a_n_prime;
          return t;
        }
        break;
      }
      t.a_n = std::pow(-std::expm1(-1.0 / nn), -1.0 / a);
      t.a_n_prime = std::pow(nn + 1.0, 1.0 / a);
      t.A_n = std::pow(-std::expm1(-1.0 / nn) * (nn + 1.0), -1.0 / a);
      return t;
    case Kind::boolean:  // dagum: x^{-a} = 1/p - 1
      t.a_n = std::pow(std::expm1(1.0 / nn), -1.0 / a);
      t.a_n_prime = std::pow(nn, 1.0 / a);
      t.A_n = std::pow(nn * std::expm1(1.0 / nn), -1.0 / a);
      return t;
  }
  throw std::domain_error("scaling: family " + family_name(f) +
                          " is not supported on [0,inf)");
}

/// Quantile-based scalings for a general CDF on [0, inf).
inline ScalingTriple scaling(const Cdf& f, std::int64_t n) {
  if (n < 1) throw std::domain_error("scaling: n must be >= 1");
  if (!f.has_quantile())
    throw std::domain_error("scaling: CDF '" + f.name() + "' has no quantile channel");
  if (!(f.support_lo() >= 0.0))
    throw std::domain_error("scaling: CDF '" + f.name() + "' is not supported on [0,inf)");
  const double nn = static_cast<double>(n);
  ScalingTriple t;
  t.n = n;
  t.a_n = f.quantile(std::exp(-1.0 / nn));
  t.a_n_prime = f.quantile(nn / (nn + 1.0));
  if (!std::isfinite(t.a_n) || !std::isfinite(t.a_n_prime) || !(t.a_n > 0.0) ||
      !(t.a_n_prime > 0.0) || t.a_n > t.a_n_prime)
    throw solver_error("scaling: quantile failure for '" + f.name() + "' at n=" +
                       std::to_string(n));
  t.A_n = t.a_n / t.a_n_prime;
  return t;
}

/// The crossover scale balancing the interior and boundary error terms.
///
/// map(t) is the explicit increasing function
///   t * { alpha*e/g(t) - (e+1) }^{1/(alpha - g(t))},
/// defined where 0 < g(t) < alpha*e/(e+1); invert(x) recovers t from
/// map(t) = x by bracketing and bisection (no derivative of g required).
class CrossoverScale {
 public:
  CrossoverScale(double alpha, AuxFn aux) : alpha_(alpha), aux_(std::move(aux)) {
    if (!(alpha_ > 0.0)) throw std::domain_error("CrossoverScale: alpha must be > 0");
    t_min_ = find_t_min();
    t_floor_ = t_min_ * (1.0 + 1e-6);
    x_min_ = map(t_floor_);
    check_monotone();
  }

  double alpha() const { return alpha_; }
  const AuxFn& aux() const { return aux_; }

  /// Infimum of the validity range: g(t) < alpha*e/(e+1) for t > t_min.
  double t_min() const { return t_min_; }

  /// Smallest x accepted by invert().
  double x_min() const { return x_min_; }

  double map(double t) const {
    const double lv = log_map(t);
    if (std::fabs(lv) < 300.0) {
      const double g = aux_(t);
      return t * std::pow(alpha_ * kE / g - (kE + 1.0), 1.0 / (alpha_ - g));
    }
    return std::exp(lv);  // overflow-safe for extreme t
  }

  double log_map(double t) const {
    if (!(t >= aux_.valid_from))
      throw std::domain_error("CrossoverScale: t below the bound's validity threshold");
    const double g = aux_(t);
    const double base = alpha_ * kE / g - (kE + 1.0);
    if (!(g > 0.0) || !(base > 0.0))
      throw std::domain_error(
          "CrossoverScale: map undefined, need 0 < g(t) < alpha*e/(e+1) (t=" +
          std::to_string(t) + ")");
    return std::log(t) + std::log(base) / (alpha_ - g);
  }

  /// Inverse of map(). Relative residual of map(invert(x)) vs x is <= 1e-10.
  double invert(double x) const {
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::domain_error("CrossoverScale::invert: x must be positive and finite");
    const double lx = std::log(x);
    double lo = t_floor_;
    if (log_map(lo) > lx)
      throw std::domain_error("CrossoverScale::invert: x below the invertible range");
    double hi = lo;
    bool bracketed = false;
    for (int i = 0; i < 200; ++i) {
      hi *= 2.0;
      if (log_map(hi) >= lx) {
        bracketed = true;
        break;
      }
      lo = hi;
    }
    if (!bracketed)
      throw solver_error("CrossoverScale::invert: bracket expansion failed at x=" +
                         std::to_string(x));
    for (int i = 0; i < 200 && (hi - lo) > 1e-13 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (log_map(mid) < lx ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    const double resid = std::fabs(map(t) - x) / x;
    if (!(resid <= 1e-10))
      throw solver_error("CrossoverScale::invert: residual " + std::to_string(resid) +
                         " at x=" + std::to_string(x));
    return t;
  }

 private:
  double find_t_min() const {
    const double threshold = alpha_ * kE / (kE + 1.0);
    double lo = aux_.valid_from;
    if (aux_(lo) < threshold) return lo;
    double hi = lo > 0.0 ? lo : 1.0;
    bool found = false;
    for (int i = 0; i < 1024; ++i) {
      hi *= 2.0;
      if (aux_(hi) < threshold) {
        found = true;
        break;
      }
      lo = hi;
    }
    if (!found)
      throw solver_error("CrossoverScale: auxiliary bound never drops below alpha*e/(e+1)");
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (aux_(mid) < threshold ? hi : lo) = mid;
    }
    return lo;  // g(t_min) >= threshold: map() rejects t_min itself
  }

  void check_monotone() const {
    double prev = x_min_;
    double t = t_floor_;
    for (int i = 0; i < 64; ++i) {
      t *= 1.7;
      const double v = map(t);
      if (!(v > prev))
        throw std::invalid_argument(
            "CrossoverScale: map is not strictly increasing near t=" + std::to_string(t));
      prev = v;
    }
  }

  double alpha_;
  AuxFn aux_;
  double t_min_ = 0.0;
  double t_floor_ = 0.0;
  double x_min_ = 0.0;
};

/// Leading-order crossover scale for the power-tail bound:
/// e^{-1/(2 alpha)} * sqrt(x), valid as x -> inf.
inline double crossover_scale_leading(double alpha, double x) {
  if (!(alpha > 0.0)) throw std::domain_error("crossover_scale_leading: alpha must be > 0");
  return std::exp(-0.5 / alpha) * std::sqrt(x);
}

}  // namespace maxconv
