#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxconv/cdf.hpp"

namespace maxconv {

/// Right-continuous step CDF over a finite knot set, e.g. an empirical CDF
/// loaded from data. Ties in probabilities (flat regions) are allowed; ties
/// in knots are rejected. The quantile is the generalized inverse
/// F<-(y) = inf{x : F(x) >= y}.
class GridCdf {
 public:
  GridCdf(std::vector<double> knots, std::vector<double> probs)
      : knots_(std::move(knots)), probs_(std::move(probs)) {
    if (knots_.empty() || knots_.size() != probs_.size())
      throw std::invalid_argument("GridCdf: need equal, non-empty knot/prob vectors");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      if (!std::isfinite(knots_[i])) throw std::invalid_argument("GridCdf: knots must be finite");
      if (i > 0 && !(knots_[i] > knots_[i - 1]))
        throw std::invalid_argument("GridCdf: knots must be strictly increasing");
      if (!(probs_[i] >= 0.0 && probs_[i] <= 1.0))
        throw std::invalid_argument("GridCdf: probs must lie in [0,1]");
      if (i > 0 && probs_[i] < probs_[i - 1])
        throw std::invalid_argument("GridCdf: probs must be non-decreasing");
    }
    if (probs_.back() != 1.0)
      throw std::invalid_argument("GridCdf: probs must end at 1");
  }

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& probs() const { return probs_; }

  double cdf(double x) const {
    // largest knot <= x
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    if (it == knots_.begin()) return 0.0;
    return probs_[static_cast<std::size_t>(it - knots_.begin()) - 1];
  }

  double survival(double x) const { return 1.0 - cdf(x); }

  double quantile(double y) const {
    if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("GridCdf::quantile: y outside [0,1]");
    auto it = std::lower_bound(probs_.begin(), probs_.end(), y);
    if (it == probs_.end()) return knots_.back();  // unreachable: probs end at 1
    return knots_[static_cast<std::size_t>(it - probs_.begin())];
  }

  Cdf as_cdf() const {
    GridCdf g = *this;
    Cdf::Spec s;
    s.cdf = [g](double x) { return g.cdf(x); };
    s.survival = [g](double x) { return g.survival(x); };
    s.quantile = [g](double y) { return g.quantile(y); };
    s.support_lo = knots_.front();
    s.name = "grid[" + std::to_string(knots_.size()) + "]";
    return Cdf(std::move(s));
  }

  /// Two-column CSV (x, p); comma or whitespace separated, '#' comments,
  /// one optional header line. Strictly increasing x enforced on load.
  static GridCdf from_csv(std::istream& in) {
    std::vector<double> xs, ps;
    std::string line;
    bool first_data_line = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string t = line;
      for (char& c : t)
        if (c == ',' || c == ';' || c == '\t') c = ' ';
      std::istringstream ls(t);
      double x = 0, p = 0;
      if (!(ls >> x >> p)) {
        std::istringstream probe(t);
        std::string tok;
        if (!(probe >> tok) || tok[0] == '#') continue;  // blank or comment
        if (first_data_line) {                           // header
          first_data_line = false;
          continue;
        }
        throw std::invalid_argument("GridCdf: unparseable line " + std::to_string(line_no));
      }
      first_data_line = false;
      xs.push_back(x);
      ps.push_back(p);
    }
    return GridCdf(std::move(xs), std::move(ps));
  }

  static GridCdf from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("GridCdf: cannot open " + path);
    return from_csv(in);
  }

 private:
  std::vector<double> knots_;
  std::vector<double> probs_;
};

}  // namespace maxconv
