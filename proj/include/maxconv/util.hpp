#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxconv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kE = 2.718281828459045235360287471352662498;

/// Raised when a value is requested at a point where the defining
/// expression has a pole (e.g. a CDF value of exactly 0 or 1).
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an iterative solver fails to converge or to bracket.
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  g.back() = hi;
  return g;
}

/// Geometrically spaced grid; requires 0 < lo <= hi.
inline std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo))
    throw std::domain_error("geometric_grid: need 0 < lo <= hi");
  if (points == 0) return {};
  if (points == 1) return {lo};
  const double llo = std::log(lo), lhi = std::log(hi);
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(points - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace maxconv
