#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "maxconv/util.hpp"

namespace maxconv {

/// An immutable, shareable distribution function on the reals.
///
/// Evaluation goes through two channels: cdf(x) and survival(x) = 1 - cdf(x).
/// The survival channel must be implemented without forming 1 - F(x), so that
/// values very close to 1 keep full relative precision. Density and quantile
/// (generalized inverse) are optional channels.
///
/// Copies share the underlying state; all channels are const and safe to
/// call from any number of threads.
class Cdf {
 public:
  using Fn = std::function<double(double)>;

  struct Spec {
    Fn cdf;       // required
    Fn survival;  // required
    Fn density;   // optional
    Fn quantile;  // optional generalized inverse, inf{x : F(x) >= p}
    double support_lo = 0.0;
    std::string name;
  };

  explicit Cdf(Spec spec) : impl_(std::make_shared<const Spec>(std::move(spec))) {
    if (!impl_->cdf || !impl_->survival)
      throw std::invalid_argument("Cdf: cdf and survival channels are required");
  }

  double operator()(double x) const { return impl_->cdf(x); }
  double cdf(double x) const { return impl_->cdf(x); }
  double survival(double x) const { return impl_->survival(x); }

  bool has_density() const { return static_cast<bool>(impl_->density); }
  double density(double x) const {
    if (!has_density()) throw std::logic_error("Cdf '" + name() + "' has no density channel");
    return impl_->density(x);
  }

  bool has_quantile() const { return static_cast<bool>(impl_->quantile); }
  double quantile(double p) const {
    if (!has_quantile()) throw std::logic_error("Cdf '" + name() + "' has no quantile channel");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile: p outside [0,1]");
    return impl_->quantile(p);
  }

  double support_lo() const { return impl_->support_lo; }
  const std::string& name() const { return impl_->name; }

  /// True when both objects view the same underlying function object.
  friend bool same_function(const Cdf& a, const Cdf& b) { return a.impl_ == b.impl_; }

 private:
  std::shared_ptr<const Spec> impl_;
};

/// View of x -> F(scale * x), i.e. the law of X / scale.
inline Cdf rescale(const Cdf& f, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::domain_error("rescale: scale must be positive and finite");
  Cdf::Spec s;
  s.cdf = [f, scale](double x) { return f.cdf(scale * x); };
  s.survival = [f, scale](double x) { return f.survival(scale * x); };
  if (f.has_density())
    s.density = [f, scale](double x) { return scale * f.density(scale * x); };
  if (f.has_quantile())
    s.quantile = [f, scale](double p) { return f.quantile(p) / scale; };
  s.support_lo = f.support_lo() / scale;
  s.name = f.name() + "/scaled";
  return Cdf(std::move(s));
}

}  // namespace maxconv
