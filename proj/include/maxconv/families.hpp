#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "maxconv/cdf.hpp"
#include "maxconv/util.hpp"

namespace maxconv {

/// The three max-convolution semigroups a limit family can live in.
enum class Kind { classical, free, boolean };

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::classical: return "classical";
    case Kind::free: return "free";
    case Kind::boolean: return "boolean";
  }
  return "?";
}

/// Parametric extreme-value family tag. The classical and free kinds carry
/// the full three-case parameterization (alpha > 0, alpha < 0, alpha == 0);
/// the boolean kind exists only for alpha > 0.
struct EvFamily {
  Kind kind;
  double alpha;

  EvFamily(Kind k, double a) : kind(k), alpha(a) {
    if (!std::isfinite(a)) throw std::domain_error("EvFamily: alpha must be finite");
    if (k == Kind::boolean && !(a > 0.0))
      throw std::domain_error("EvFamily: boolean kind requires alpha > 0");
  }
};

/// Conventional name of the family: frechet/weibull/gumbel for classical,
/// pareto/beta/exponential for free, dagum for boolean.
inline std::string family_name(const EvFamily& f) {
  switch (f.kind) {
    case Kind::classical:
      return f.alpha > 0 ? "frechet" : (f.alpha < 0 ? "weibull" : "gumbel");
    case Kind::free:
      return f.alpha > 0 ? "pareto" : (f.alpha < 0 ? "beta" : "exponential");
    case Kind::boolean:
      return "dagum";
  }
  return "?";
}

inline double ev_support_lo(const EvFamily& f) {
  switch (f.kind) {
    case Kind::classical: return f.alpha > 0 ? 0.0 : -kInf;
    case Kind::free: return f.alpha > 0 ? 1.0 : (f.alpha < 0 ? -1.0 : 0.0);
    case Kind::boolean: return 0.0;
  }
  return kNaN;
}

inline double ev_cdf(const EvFamily& f, double x) {
  const double a = f.alpha;
  switch (f.kind) {
    case Kind::classical:
      if (a > 0) return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -a));
      if (a < 0) return x >= 0.0 ? 1.0 : std::exp(-std::pow(-x, -a));
      return std::exp(-std::exp(-x));
    case Kind::free:
      if (a > 0) return x < 1.0 ? 0.0 : -std::expm1(-a * std::log(x));
      if (a < 0) {
        if (x > 0.0) return 1.0;
        if (x < -1.0) return 0.0;
        return x == 0.0 ? 1.0 : -std::expm1(-a * std::log(-x));
      }
      return x < 0.0 ? 0.0 : -std::expm1(-x);
    case Kind::boolean:
      return x <= 0.0 ? 0.0 : 1.0 / (1.0 + std::pow(x, -a));
  }
  return kNaN;
}

inline double ev_survival(const EvFamily& f, double x) {
  const double a = f.alpha;
  switch (f.kind) {
    case Kind::classical:
      if (a > 0) return x <= 0.0 ? 1.0 : -std::expm1(-std::pow(x, -a));
      if (a < 0) return x >= 0.0 ? 0.0 : -std::expm1(-std::pow(-x, -a));
      return -std::expm1(-std::exp(-x));
    case Kind::free:
      if (a > 0) return x < 1.0 ? 1.0 : std::pow(x, -a);
      if (a < 0) {
        if (x > 0.0) return 0.0;
        if (x < -1.0) return 1.0;
        return x == 0.0 ? 0.0 : std::pow(-x, -a);
      }
      return x < 0.0 ? 1.0 : std::exp(-x);
    case Kind::boolean:
      // x^{-a} / (1 + x^{-a}) == 1 / (1 + x^a)
      return x <= 0.0 ? 1.0 : 1.0 / (1.0 + std::pow(x, a));
  }
  return kNaN;
}

inline double ev_density(const EvFamily& f, double x) {
  const double a = f.alpha;
  switch (f.kind) {
    case Kind::classical:
      if (a > 0) return x <= 0.0 ? 0.0 : a * std::pow(x, -a - 1.0) * std::exp(-std::pow(x, -a));
      if (a < 0) {
        if (x >= 0.0) return 0.0;
        const double b = -a;
        return b * std::pow(-x, b - 1.0) * std::exp(-std::pow(-x, b));
      }
      return std::exp(-x - std::exp(-x));
    case Kind::free:
      if (a > 0) return x < 1.0 ? 0.0 : a * std::pow(x, -a - 1.0);
      if (a < 0) {
        if (x >= 0.0 || x <= -1.0) return 0.0;
        const double b = -a;
        return b * std::pow(-x, b - 1.0);
      }
      return x < 0.0 ? 0.0 : std::exp(-x);
    case Kind::boolean: {
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) {
        const double t = std::pow(x, -a);  // <= 1, no overflow
        const double d = 1.0 + t;
        return a * t / (x * d * d);
      }
      const double t = std::pow(x, a);  // <= 1
      const double d = 1.0 + t;
      return a * t / (x * d * d);
    }
  }
  return kNaN;
}

/// Closed-form inverse. p = 0 and p = 1 return the support endpoints, with
/// an infinity sentinel when the support is unbounded on that side.
inline double ev_quantile(const EvFamily& f, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("ev_quantile: p outside [0,1]");
  const double a = f.alpha;
  // -log(p), through the complement when p is near 1.
  const auto neg_log = [](double q) {
    return q >= 0.5 ? -std::log1p(q - 1.0) : -std::log(q);
  };
  switch (f.kind) {
    case Kind::classical:
      if (a > 0) {
        if (p == 0.0) return 0.0;
        if (p == 1.0) return kInf;
        return std::pow(neg_log(p), -1.0 / a);
      }
      if (a < 0) {
        if (p == 0.0) return -kInf;
        if (p == 1.0) return 0.0;
        return -std::pow(neg_log(p), -1.0 / a);
      }
      if (p == 0.0) return -kInf;
      if (p == 1.0) return kInf;
      return -std::log(neg_log(p));
    case Kind::free:
      if (a > 0) {
        if (p == 1.0) return kInf;
        return std::exp(-std::log1p(-p) / a);  // (1-p)^{-1/a}; p=0 -> 1
      }
      if (a < 0) {
        if (p == 1.0) return 0.0;
        return -std::exp(std::log1p(-p) / (-a));  // -(1-p)^{1/|a|}; p=0 -> -1
      }
      if (p == 1.0) return kInf;
      return -std::log1p(-p);
    case Kind::boolean:
      if (p == 0.0) return 0.0;
      if (p == 1.0) return kInf;
      // x^{-a} = (1-p)/p
      return std::pow((1.0 - p) / p, -1.0 / a);
  }
  return kNaN;
}

/// Wraps a family as an evaluable Cdf with all four channels.
inline Cdf make_cdf(const EvFamily& f) {
  Cdf::Spec s;
  s.cdf = [f](double x) { return ev_cdf(f, x); };
  s.survival = [f](double x) { return ev_survival(f, x); };
  s.density = [f](double x) { return ev_density(f, x); };
  s.quantile = [f](double p) { return ev_quantile(f, p); };
  s.support_lo = ev_support_lo(f);
  s.name = family_name(f) + "(alpha=" + std::to_string(f.alpha) + ")";
  return Cdf(std::move(s));
}

}  // namespace maxconv
