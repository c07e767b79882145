#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "maxconv/cdf.hpp"
#include "maxconv/families.hpp"
#include "maxconv/util.hpp"

namespace maxconv {

/// A CDF value. Construction validates the range; nothing is clamped.
class UnitValue {
 public:
  UnitValue(double v) : v_(v) {  // NOLINT: implicit by design at call sites
    if (!(v >= 0.0 && v <= 1.0))
      throw std::domain_error("UnitValue: expected a value in [0,1], got " + std::to_string(v));
  }
  operator double() const { return v_; }
  double value() const { return v_; }

 private:
  double v_;
};

/// Binary operation of the boolean max-convolution semigroup on [0,1]:
/// (r^{-1} - 1) = (u^{-1} - 1) + (v^{-1} - 1), with 0 absorbing.
inline double boolean_combine(UnitValue u, UnitValue v) {
  const double a = u, b = v;
  if (a == 0.0 || b == 0.0) return 0.0;
  const double w = (1.0 - a) / a + (1.0 - b) / b;
  return 1.0 / (1.0 + w);
}

/// n-fold boolean power u/(n - (n-1)u), in the cancellation-free form
/// u / (1 + (n-1)(1-u)). n may be any real >= 1.
inline double boolean_power(UnitValue u, double n) {
  if (!(n >= 1.0)) throw std::domain_error("boolean_power: n must be >= 1");
  if (n == 1.0) return u;
  return u / (1.0 + (n - 1.0) * (1.0 - u));
}

/// n-fold free power max{nu - (n-1), 0} computed as max{1 - n(1-u), 0}.
inline double free_power(UnitValue u, double n) {
  if (!(n >= 1.0)) throw std::domain_error("free_power: n must be >= 1");
  if (n == 1.0) return u;
  const double r = 1.0 - n * (1.0 - u);
  return r > 0.0 ? r : 0.0;
}

/// n-fold classical power u^n.
inline double classical_power(UnitValue u, double n) {
  if (!(n >= 1.0)) throw std::domain_error("classical_power: n must be >= 1");
  if (n == 1.0) return u;
  return std::pow(u, n);
}

/// Isomorphism of ([0,1], boolean combine) onto ([0,1], *):
/// u -> exp(1 - 1/u), with 0 -> 0. Carries the Dagum family onto Frechet.
inline double boolean_to_classical(UnitValue u) {
  const double a = u;
  if (a == 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / a);
}

/// Inverse isomorphism u -> 1/(1 - log u), with 0 -> 0.
inline double classical_to_boolean(UnitValue u) {
  const double a = u;
  if (a == 0.0) return 0.0;
  return 1.0 / (1.0 - std::log(a));
}

namespace detail {

// Classical power F^n through the survival channel when F is close to 1.
inline double classical_power_cdf_value(double cdf, double surv, double n) {
  return surv < 0.5 ? std::exp(n * std::log1p(-surv)) : std::pow(cdf, n);
}

}  // namespace detail

/// Lazily evaluated n-fold max-convolution power of a CDF. All values are
/// produced from F's survival channel, so powers stay accurate when
/// F(x) is within 1e-15 of 1 (the regime every rate experiment lives in).
/// Density propagates for the boolean and classical kinds when F has one;
/// the quantile channel propagates for all kinds.
inline Cdf power_cdf(const Cdf& f, double n, Kind kind) {
  if (!(n >= 1.0) || !std::isfinite(n)) throw std::domain_error("power_cdf: n must be >= 1");
  Cdf::Spec s;
  s.support_lo = f.support_lo();
  s.name = f.name() + "^" + std::string(to_string(kind)) + "(" + std::to_string(n) + ")";
  switch (kind) {
    case Kind::boolean: {
      s.cdf = [f, n](double x) {
        return f.cdf(x) / (1.0 + (n - 1.0) * f.survival(x));
      };
      s.survival = [f, n](double x) {
        const double sv = f.survival(x);
        return n * sv / (1.0 + (n - 1.0) * sv);
      };
      if (f.has_density())
        s.density = [f, n](double x) {
          const double d = 1.0 + (n - 1.0) * f.survival(x);
          return n * f.density(x) / (d * d);
        };
      if (f.has_quantile())
        s.quantile = [f, n](double p) {
          return f.quantile(n * p / (1.0 + (n - 1.0) * p));
        };
      break;
    }
    case Kind::free: {
      s.cdf = [f, n](double x) {
        const double r = 1.0 - n * f.survival(x);
        return r > 0.0 ? r : 0.0;
      };
      s.survival = [f, n](double x) {
        const double sv = n * f.survival(x);
        return sv < 1.0 ? sv : 1.0;
      };
      if (f.has_quantile()) {
        s.quantile = [f, n](double p) { return f.quantile(1.0 - (1.0 - p) / n); };
        s.support_lo = f.quantile(1.0 - 1.0 / n);
      }
      break;
    }
    case Kind::classical: {
      s.cdf = [f, n](double x) {
        return detail::classical_power_cdf_value(f.cdf(x), f.survival(x), n);
      };
      s.survival = [f, n](double x) {
        const double sv = f.survival(x);
        if (sv < 0.5) return -std::expm1(n * std::log1p(-sv));
        return 1.0 - std::pow(1.0 - sv, n);
      };
      if (f.has_density())
        s.density = [f, n](double x) {
          return n * detail::classical_power_cdf_value(f.cdf(x), f.survival(x), n - 1.0) *
                 f.density(x);
        };
      if (f.has_quantile())
        s.quantile = [f, n](double p) {
          return f.quantile(p == 0.0 ? 0.0 : std::exp(std::log(p) / n));
        };
      break;
    }
  }
  return Cdf(std::move(s));
}

}  // namespace maxconv
