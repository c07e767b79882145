#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxconv/von_mises.hpp"

namespace maxconv {

/// Loads a user auxiliary bound from a small text file:
///
///   # comment
///   valid_from 2.0
///   2.0   1.0
///   10.0  0.11
///   1e6   1e-6
///
/// Knots are (x, g(x)) pairs with strictly increasing x > 0 and positive,
/// non-increasing g; evaluation interpolates log-linearly (linear in
/// log g vs log x) and extrapolates the last segment's slope beyond the
/// final knot. valid_from defaults to the first knot.
inline AuxFn load_aux_fn(std::istream& in) {
  std::vector<double> lx, lg;
  double valid_from = kNaN;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = line;
    for (char& c : t)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(t);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (first == "valid_from") {
      if (!(ls >> valid_from)) throw std::invalid_argument("aux file: bad valid_from line");
      continue;
    }
    double x = 0, g = 0;
    std::istringstream pair(t);
    if (!(pair >> x >> g))
      throw std::invalid_argument("aux file: unparseable line " + std::to_string(line_no));
    if (!(x > 0.0) || !(g > 0.0))
      throw std::invalid_argument("aux file: knots must have x > 0 and g > 0");
    if (!lx.empty() && !(std::log(x) > lx.back()))
      throw std::invalid_argument("aux file: x values must be strictly increasing");
    if (!lg.empty() && std::log(g) > lg.back())
      throw std::invalid_argument("aux file: g values must be non-increasing");
    lx.push_back(std::log(x));
    lg.push_back(std::log(g));
  }
  if (lx.size() < 2) throw std::invalid_argument("aux file: need at least two knots");
  if (std::isnan(valid_from)) valid_from = std::exp(lx.front());
  if (std::log(valid_from) < lx.front() - 1e-12)
    throw std::invalid_argument("aux file: valid_from lies below the first knot");

  AuxFn aux;
  aux.valid_from = valid_from;
  aux.fn = [lx, lg](double x) {
    if (!(x > 0.0)) return kInf;
    const double l = std::log(x);
    if (l <= lx.front()) return std::exp(lg.front());
    std::size_t hi = std::size_t(std::upper_bound(lx.begin(), lx.end(), l) - lx.begin());
    if (hi >= lx.size()) hi = lx.size() - 1;  // extrapolate with the last slope
    const std::size_t lo = hi - 1;
    const double w = (l - lx[lo]) / (lx[hi] - lx[lo]);
    return std::exp(lg[lo] + w * (lg[hi] - lg[lo]));
  };
  return aux;
}

inline AuxFn load_aux_fn_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("aux file: cannot open " + path);
  return load_aux_fn(in);
}

}  // namespace maxconv
