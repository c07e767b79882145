#pragma once

#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxconv/rate_lab.hpp"
#include "maxconv/von_mises.hpp"

namespace maxconv {

/// Shortest decimal form that round-trips a double; "inf"/"nan" spelled out.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char best[32];
  std::snprintf(best, sizeof(best), "%.17g", v);
  for (int prec = 1; prec < 17; ++prec) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v && std::strlen(buf) < std::strlen(best)) std::strcpy(best, buf);
  }
  return best;
}

inline nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;  // JSON has no inf/nan
}

// ---------------------------------------------------------------------------
// von Mises report

inline nlohmann::json to_json(const VonMisesReport& rep) {
  nlohmann::json j;
  j["cdf"] = rep.cdf_name;
  j["alpha"] = rep.alpha;
  j["grid"] = rep.grid;
  nlohmann::json k = nlohmann::json::array(), g = nlohmann::json::array();
  for (double v : rep.deviation) k.push_back(json_number(v));
  for (double v : rep.bound) g.push_back(json_number(v));
  j["k"] = std::move(k);
  j["g"] = std::move(g);
  j["ratio_max"] = json_number(rep.ratio_max);
  j["violations"] = nlohmann::json::array();
  for (const auto& v : rep.violations)
    j["violations"].push_back({{"index", v.index}, {"x", v.x}, {"k", v.deviation}, {"g", v.bound}});
  j["errors"] = nlohmann::json::array();
  for (const auto& e : rep.errors)
    j["errors"].push_back({{"index", e.index}, {"x", e.x}, {"what", e.what}});
  j["passed"] = rep.passed();
  return j;
}

// ---------------------------------------------------------------------------
// rate report

inline constexpr const char* kRateCsvHeader =
    "n,a_n,a_n_prime,A_n,sup_lo,sup_hi,witness_x,bound_tail,bound_interior,bound_A,"
    "n_times_sup";

inline void write_rate_csv(const RateReport& rep, std::ostream& out) {
  out << kRateCsvHeader << "\n";
  for (const auto& r : rep.rows) {
    out << r.n << ',' << format_double(r.a_n) << ',' << format_double(r.a_n_prime) << ','
        << format_double(r.A_n) << ',' << format_double(r.sup_lo) << ','
        << format_double(r.sup_hi) << ',' << format_double(r.witness_x) << ','
        << format_double(r.bound_tail) << ',' << format_double(r.bound_interior) << ','
        << format_double(r.bound_A) << ',' << format_double(r.n_times_sup) << "\n";
  }
}

inline nlohmann::json to_json(const RateReport& rep) {
  nlohmann::json j;
  j["family"] = rep.family;
  j["kind"] = to_string(rep.kind);
  j["alpha"] = rep.alpha;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    j["rows"].push_back({{"n", r.n},
                         {"a_n", json_number(r.a_n)},
                         {"a_n_prime", json_number(r.a_n_prime)},
                         {"A_n", json_number(r.A_n)},
                         {"sup_lo", json_number(r.sup_lo)},
                         {"sup_hi", json_number(r.sup_hi)},
                         {"witness_x", json_number(r.witness_x)},
                         {"bound_tail", json_number(r.bound_tail)},
                         {"bound_interior", json_number(r.bound_interior)},
                         {"bound_A", json_number(r.bound_A)},
                         {"n_times_sup", json_number(r.n_times_sup)},
                         {"within_bound", r.within_bound},
                         {"converged", r.converged},
                         {"cells_used", r.cells_used}});
  }
  j["slope"] = json_number(rep.fit.slope);
  j["intercept"] = json_number(rep.fit.intercept);
  j["residual"] = json_number(rep.fit.residual);
  if (rep.onset_n0)
    j["onset_n0"] = *rep.onset_n0;
  else
    j["onset_n0"] = nullptr;
  if (rep.free_frechet_bound_ok) j["free_frechet_bound_ok"] = *rep.free_frechet_bound_ok;
  return j;
}

// ---------------------------------------------------------------------------
// minimal SVG log-log plot

namespace detail {

struct SvgMap {
  double lx0, lx1, ly0, ly1;
  double w = 640, h = 440, ml = 70, mr = 20, mt = 20, mb = 50;

  double px(double x) const {
    return ml + (std::log10(x) - lx0) / (lx1 - lx0) * (w - ml - mr);
  }
  double py(double y) const {
    return h - mb - (std::log10(y) - ly0) / (ly1 - ly0) * (h - mt - mb);
  }
};

inline std::string svg_polyline(const SvgMap& m, const std::vector<std::pair<double, double>>& pts,
                                const std::string& color, const std::string& dash) {
  std::string s = "  <polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
  if (!dash.empty()) s += " stroke-dasharray=\"" + dash + "\"";
  s += " points=\"";
  for (const auto& [x, y] : pts) {
    if (!(x > 0) || !(y > 0)) continue;
    s += format_double(m.px(x)) + "," + format_double(m.py(y)) + " ";
  }
  s += "\"/>\n";
  return s;
}

}  // namespace detail

/// Log-log plot of (n, sup_hi) with the matching reference slope:
/// alpha e^{1/2} n^{-1/2} for boolean powers, 1/n for free powers.
inline void write_rate_svg(const RateReport& rep, std::ostream& out) {
  std::vector<std::pair<double, double>> data, ref;
  double xmin = kInf, xmax = 0, ymin = kInf, ymax = 0;
  for (const auto& r : rep.rows) {
    const double n = static_cast<double>(r.n);
    const double refv = rep.kind == Kind::boolean
                            ? rep.alpha * std::exp(0.5) / std::sqrt(n)
                            : 1.0 / n;
    data.emplace_back(n, r.sup_hi);
    ref.emplace_back(n, refv);
    xmin = std::min(xmin, n);
    xmax = std::max(xmax, n);
    for (double y : {r.sup_hi, refv}) {
      if (y > 0) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (data.empty() || !(ymin > 0)) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
    return;
  }
  detail::SvgMap m{std::log10(xmin), std::log10(xmax * (xmax == xmin ? 10 : 1)),
                   std::floor(std::log10(ymin)), std::ceil(std::log10(ymax))};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << m.w << "\" height=\"" << m.h
      << "\" viewBox=\"0 0 " << m.w << " " << m.h << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out << "  <line x1=\"" << m.ml << "\" y1=\"" << m.h - m.mb << "\" x2=\"" << m.w - m.mr
      << "\" y2=\"" << m.h - m.mb << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << m.ml << "\" y1=\"" << m.mt << "\" x2=\"" << m.ml << "\" y2=\""
      << m.h - m.mb << "\" stroke=\"black\"/>\n";
  // decade ticks
  for (int d = static_cast<int>(std::ceil(m.lx0)); d <= static_cast<int>(std::floor(m.lx1)); ++d) {
    const double x = m.px(std::pow(10.0, d));
    out << "  <line x1=\"" << x << "\" y1=\"" << m.h - m.mb << "\" x2=\"" << x << "\" y2=\""
        << m.h - m.mb + 5 << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << x << "\" y=\"" << m.h - m.mb + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(m.ly0)); d <= static_cast<int>(std::floor(m.ly1)); ++d) {
    const double y = m.py(std::pow(10.0, d));
    out << "  <line x1=\"" << m.ml - 5 << "\" y1=\"" << y << "\" x2=\"" << m.ml << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << m.ml - 8 << "\" y=\"" << y + 4
        << "\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  out << detail::svg_polyline(m, ref, "#888888", "6,4");
  out << detail::svg_polyline(m, data, "#0000cc", "");
  out << "  <text x=\"" << m.w / 2 << "\" y=\"" << m.h - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">n</text>\n";
  out << "  <text x=\"15\" y=\"" << m.mt + 10 << "\" font-size=\"12\">sup</text>\n";
  out << "</svg>\n";
}

}  // namespace maxconv
