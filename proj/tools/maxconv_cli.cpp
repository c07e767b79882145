// Command-line surface for the max-convolution rate laboratory:
// family evaluation, power maps, scaling sequences, the crossover scale,
// verification suites, and convergence-rate experiments with CSV/JSON/SVG
// reports.
//
// Exit codes: 0 pass, 1 domain error, 2 usage error, 3 bound violation.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxconv/maxconv.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;

maxconv::EvFamily parse_family(const std::string& name, double alpha) {
  using maxconv::EvFamily;
  using maxconv::Kind;
  if (name == "frechet") return {Kind::classical, alpha};
  if (name == "weibull") return {Kind::classical, -alpha};
  if (name == "gumbel") return {Kind::classical, 0.0};
  if (name == "pareto") return {Kind::free, alpha};
  if (name == "beta") return {Kind::free, -alpha};
  if (name == "exponential") return {Kind::free, 0.0};
  if (name == "dagum") return {Kind::boolean, alpha};
  throw CLI::ValidationError("--family", "unknown family '" + name + "'");
}

maxconv::Kind parse_kind(const std::string& kind) {
  if (kind == "classical") return maxconv::Kind::classical;
  if (kind == "free") return maxconv::Kind::free;
  if (kind == "boolean") return maxconv::Kind::boolean;
  throw CLI::ValidationError("--kind", "unknown kind '" + kind + "'");
}

// "start:stop:points" (geometric), a comma list, or a single value.
std::vector<std::int64_t> parse_n_range(const std::string& spec) {
  std::vector<std::int64_t> out;
  const auto push = [&out](double v) {
    if (!(v >= 1.0) || !std::isfinite(v))
      throw CLI::ValidationError("--n", "n values must be >= 1");
    out.push_back(static_cast<std::int64_t>(std::llround(v)));
  };
  if (spec.find(':') != std::string::npos) {
    double start = 0, stop = 0;
    long points = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> start >> c1 >> stop >> c2 >> points) || c1 != ':' || c2 != ':' || points < 1 ||
        !(start >= 1.0) || !(stop >= start))
      throw CLI::ValidationError("--n", "expected start:stop:points with 1 <= start <= stop");
    if (points == 1) {
      push(start);
    } else {
      const double ls = std::log(start), le = std::log(stop);
      for (long i = 0; i < points; ++i)
        push(std::exp(ls + (le - ls) * static_cast<double>(i) / (points - 1)));
    }
  } else {
    std::string t = spec;
    for (char& c : t)
      if (c == ',') c = ' ';
    std::istringstream ss(t);
    double v = 0;
    while (ss >> v) push(v);
    if (out.empty()) throw CLI::ValidationError("--n", "no n values given");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << body;
}

json config_echo(const json& flags) {
  json j = flags;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  j["generated_at_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  return j;
}

// --------------------------------------------------------------------------

struct DistArgs {
  std::string family = "frechet";
  double alpha = 1.0;
  std::string grid_csv;
  std::vector<double> xs;
  std::string format = "csv";
  std::string out;
};

int cmd_dist(const DistArgs& a) {
  maxconv::Cdf cdf = a.grid_csv.empty()
                         ? maxconv::make_cdf(parse_family(a.family, a.alpha))
                         : maxconv::GridCdf::from_csv_file(a.grid_csv).as_cdf();
  std::ostringstream body;
  if (a.format == "json") {
    json rows = json::array();
    for (double x : a.xs)
      rows.push_back({{"x", x},
                      {"cdf", maxconv::json_number(cdf.cdf(x))},
                      {"survival", maxconv::json_number(cdf.survival(x))}});
    body << json({{"cdf", cdf.name()}, {"rows", rows}}).dump(2) << "\n";
  } else {
    body << "x,cdf,survival\n";
    for (double x : a.xs)
      body << maxconv::format_double(x) << ',' << maxconv::format_double(cdf.cdf(x)) << ','
           << maxconv::format_double(cdf.survival(x)) << "\n";
  }
  write_output(a.out, body.str());
  return kExitOk;
}

struct PowerArgs {
  std::string family = "frechet";
  double alpha = 1.0;
  std::string kind = "boolean";
  double n = 1.0;
  std::vector<double> xs;
  std::string format = "csv";
  std::string out;
};

int cmd_power(const PowerArgs& a) {
  const maxconv::Cdf base = maxconv::make_cdf(parse_family(a.family, a.alpha));
  const maxconv::Cdf p = maxconv::power_cdf(base, a.n, parse_kind(a.kind));
  std::ostringstream body;
  if (a.format == "json") {
    json rows = json::array();
    for (double x : a.xs)
      rows.push_back({{"x", x},
                      {"cdf", maxconv::json_number(p.cdf(x))},
                      {"survival", maxconv::json_number(p.survival(x))}});
    body << json({{"cdf", p.name()}, {"rows", rows}}).dump(2) << "\n";
  } else {
    body << "x,cdf,survival\n";
    for (double x : a.xs)
      body << maxconv::format_double(x) << ',' << maxconv::format_double(p.cdf(x)) << ','
           << maxconv::format_double(p.survival(x)) << "\n";
  }
  write_output(a.out, body.str());
  return kExitOk;
}

struct ScalingArgs {
  std::string family = "frechet";
  double alpha = 1.0;
  std::string n_spec = "1:1000:20";
  std::string format = "csv";
  std::string out;
};

int cmd_scaling(const ScalingArgs& a) {
  const maxconv::EvFamily fam = parse_family(a.family, a.alpha);
  const auto ns = parse_n_range(a.n_spec);
  std::ostringstream body;
  if (a.format == "json") {
    json rows = json::array();
    for (auto n : ns) {
      const auto t = maxconv::scaling(fam, n);
      rows.push_back({{"n", t.n},
                      {"a_n", maxconv::json_number(t.a_n)},
                      {"a_n_prime", maxconv::json_number(t.a_n_prime)},
                      {"A_n", maxconv::json_number(t.A_n)}});
    }
    body << json({{"family", a.family}, {"alpha", a.alpha}, {"rows", rows}}).dump(2) << "\n";
  } else {
    body << "n,a_n,a_n_prime,A_n\n";
    for (auto n : ns) {
      const auto t = maxconv::scaling(fam, n);
      body << t.n << ',' << maxconv::format_double(t.a_n) << ','
           << maxconv::format_double(t.a_n_prime) << ',' << maxconv::format_double(t.A_n)
           << "\n";
    }
  }
  write_output(a.out, body.str());
  return kExitOk;
}

struct RhoArgs {
  double alpha = 1.0;
  std::string aux_file;
  std::vector<double> xs;  // evaluate rho(x)
  std::vector<double> ts;  // evaluate rho_inverse(t)
  std::string format = "csv";
  std::string out;
};

int cmd_rho(const RhoArgs& a) {
  if (a.xs.empty() && a.ts.empty())
    throw CLI::ValidationError("rho", "need at least one --x or --t evaluation point");
  const maxconv::AuxFn g = a.aux_file.empty() ? maxconv::power_tail_aux(a.alpha)
                                              : maxconv::load_aux_fn_file(a.aux_file);
  const maxconv::CrossoverScale cross(a.alpha, g);
  std::ostringstream body;
  if (a.format == "json") {
    json j;
    j["alpha"] = a.alpha;
    j["t_min"] = cross.t_min();
    json inv = json::array(), fwd = json::array();
    for (double t : a.ts) inv.push_back({{"t", t}, {"rho_inverse", cross.map(t)}});
    for (double x : a.xs) fwd.push_back({{"x", x}, {"rho", cross.invert(x)}});
    j["rho_inverse"] = inv;
    j["rho"] = fwd;
    body << j.dump(2) << "\n";
  } else {
    if (!a.ts.empty()) {
      body << "t,rho_inverse\n";
      for (double t : a.ts)
        body << maxconv::format_double(t) << ',' << maxconv::format_double(cross.map(t)) << "\n";
    }
    if (!a.xs.empty()) {
      body << "x,rho\n";
      for (double x : a.xs)
        body << maxconv::format_double(x) << ',' << maxconv::format_double(cross.invert(x))
             << "\n";
    }
  }
  write_output(a.out, body.str());
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  std::string family = "frechet";
  double alpha = 1.0;
  double alpha1 = 1.0, alpha2 = 2.0;
  std::int64_t n = 10000;
  std::size_t points = 50;
  std::size_t samples = 10000;
  double grid_lo = 0.0, grid_hi = 1e6;
  std::size_t grid_points = 1000;
  double tol = 1e-7;
  std::string out;
};

json verify_vonmises(const VerifyArgs& a) {
  const maxconv::EvFamily fam = parse_family(a.family, a.alpha);
  const maxconv::AuxFn g = maxconv::power_tail_aux(std::fabs(fam.alpha));
  const double lo = a.grid_lo > 0.0 ? a.grid_lo : 1.1 * g.valid_from;
  const auto grid = maxconv::geometric_grid(lo, a.grid_hi, a.grid_points);
  const auto rep = maxconv::verify_von_mises(maxconv::make_cdf(fam), std::fabs(fam.alpha), g, grid);
  return maxconv::to_json(rep);
}

json verify_sandwich(const VerifyArgs& a) {
  const maxconv::EvFamily fam = parse_family(a.family, a.alpha);
  const maxconv::AuxFn g = maxconv::power_tail_aux(fam.alpha);
  const auto sc = maxconv::scaling(fam, a.n);
  const double x_min = 1.05 * g.valid_from / sc.a_n_prime;
  if (!(x_min < 0.999))
    throw std::domain_error("sandwich: no admissible x in (0,1) at this n");
  const auto xs = maxconv::linear_grid(std::max(x_min, 1e-6), 0.999, a.points);
  const auto rep = maxconv::check_sandwich(fam, g, a.n, xs);
  json pts = json::array();
  for (const auto& p : rep.points)
    pts.push_back({{"x", p.x},
                   {"admissible", p.admissible},
                   {"lower", maxconv::json_number(p.lower)},
                   {"value", maxconv::json_number(p.value)},
                   {"upper", maxconv::json_number(p.upper)},
                   {"slack", maxconv::json_number(p.slack)},
                   {"pass", p.pass}});
  return {{"suite", "sandwich"}, {"alpha", rep.alpha},   {"n", rep.n},
          {"skipped", rep.skipped}, {"points", pts}, {"passed", rep.passed()}};
}

json verify_dagum_lipschitz(const VerifyArgs& a) {
  const auto res = maxconv::check_dagum_lipschitz(a.alpha1, a.alpha2, a.tol);
  return {{"suite", "dagum-lipschitz"},
          {"alpha1", res.alpha1},
          {"alpha2", res.alpha2},
          {"sup_lo", res.sup_lo},
          {"sup_hi", res.sup_hi},
          {"bound", res.bound},
          {"passed", res.pass}};
}

json verify_tail_chain(const VerifyArgs& a) {
  const maxconv::EvFamily fam = parse_family(a.family, a.alpha);
  const std::vector<double> xs = {1.0, 2.0, 10.0, 100.0};
  const auto rep = maxconv::check_tail_chain(fam, a.n, xs);
  json pts = json::array();
  for (const auto& p : rep.points)
    pts.push_back({{"x", p.x}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"pass", p.pass}});
  return {{"suite", "tail-chain"},
          {"alpha", rep.alpha},
          {"n", rep.n},
          {"points", pts},
          {"passed", rep.passed()}};
}

json verify_homomorphism(const VerifyArgs& a) {
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> mid(0.01, 1.0);
  std::uniform_real_distribution<double> npow(1.0, 30.0);
  double e_hom = 0, e_inv = 0, e_conj = 0, e_comp = 0, e_order = 0;
  using namespace maxconv;
  for (std::size_t i = 0; i < a.samples; ++i) {
    const double u = unit(rng), v = unit(rng), w = mid(rng);
    const double n = npow(rng), m = npow(rng);
    e_hom = std::max(e_hom, std::fabs(boolean_to_classical(boolean_combine(u, v)) -
                                      boolean_to_classical(u) * boolean_to_classical(v)));
    e_inv = std::max(e_inv, std::fabs(classical_to_boolean(boolean_to_classical(w)) - w));
    e_inv = std::max(e_inv, std::fabs(boolean_to_classical(classical_to_boolean(u)) - u));
    const double conj =
        classical_to_boolean(std::pow(boolean_to_classical(std::max(w, 0.05)), n));
    e_conj = std::max(e_conj, std::fabs(conj - boolean_power(std::max(w, 0.05), n)));
    e_comp = std::max(e_comp, std::fabs(boolean_power(boolean_power(u, n), m) -
                                        boolean_power(u, n * m)));
    const double fp = free_power(u, n), cp = classical_power(u, n), bp = boolean_power(u, n);
    e_order = std::max({e_order, fp - cp, cp - bp});
  }
  const double tol = 1e-12;
  json checks = json::array();
  const auto add = [&](const char* name, double err) {
    checks.push_back({{"name", name}, {"max_error", err}, {"tol", tol}, {"passed", err <= tol}});
  };
  add("homomorphism", e_hom);
  add("inverse_round_trip", e_inv);
  add("boolean_power_conjugation", e_conj);
  add("power_composition", e_comp);
  add("pointwise_ordering", e_order);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c["passed"].get<bool>();
  return {{"suite", "homomorphism"}, {"samples", a.samples}, {"checks", checks}, {"passed", ok}};
}

int cmd_verify(const VerifyArgs& a) {
  json j;
  if (a.suite == "vonmises")
    j = verify_vonmises(a);
  else if (a.suite == "sandwich")
    j = verify_sandwich(a);
  else if (a.suite == "dagum-lipschitz")
    j = verify_dagum_lipschitz(a);
  else if (a.suite == "tail-chain")
    j = verify_tail_chain(a);
  else if (a.suite == "homomorphism")
    j = verify_homomorphism(a);
  else
    throw CLI::ValidationError("--suite", "unknown suite '" + a.suite + "'");
  write_output(a.out, j.dump(2) + "\n");
  return j["passed"].get<bool>() ? kExitOk : kExitViolation;
}

struct RateArgs {
  std::string kind = "boolean";
  std::string family = "frechet";
  double alpha = 1.0;
  std::string n_spec = "1e2:1e6:9";
  double tol = 1e-7;
  std::string aux_file;
  std::string format = "csv";
  std::string out;
};

int cmd_rate(const RateArgs& a) {
  if (a.family != "frechet" && a.aux_file.empty())
    throw CLI::ValidationError(
        "--family", "rate experiments support --family frechet; other families need an "
                    "auxiliary bound via --aux-file");
  const maxconv::EvFamily fam = parse_family(a.family, a.alpha);
  const maxconv::AuxFn g = a.aux_file.empty()
                               ? maxconv::power_tail_aux(fam.alpha)
                               : maxconv::load_aux_fn_file(a.aux_file);
  maxconv::RateConfig cfg;
  cfg.kind = parse_kind(a.kind);
  cfg.n_list = parse_n_range(a.n_spec);
  cfg.tol = a.tol;
  const maxconv::RateReport rep = maxconv::rate_experiment(fam, g, cfg);

  std::ostringstream body;
  if (a.format == "json") {
    json j = maxconv::to_json(rep);
    j["config"] = config_echo({{"kind", a.kind},
                               {"family", a.family},
                               {"alpha", a.alpha},
                               {"n", a.n_spec},
                               {"tol", a.tol}});
    body << j.dump(2) << "\n";
  } else if (a.format == "svg") {
    maxconv::write_rate_svg(rep, body);
  } else {
    maxconv::write_rate_csv(rep, body);
  }
  write_output(a.out, body.str());

  // A missing onset is a violation only when some row actually had a
  // defined combined bound to hold.
  bool any_bound_defined = false;
  for (const auto& row : rep.rows)
    any_bound_defined = any_bound_defined || (std::isfinite(row.bound_tail) &&
                                              std::isfinite(row.bound_interior));
  const bool violated = (rep.free_frechet_bound_ok && !*rep.free_frechet_bound_ok) ||
                        (any_bound_defined && !rep.onset_n0.has_value());
  return violated ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-convolution calculus and certified convergence-rate laboratory"};
  app.require_subcommand(1);

  DistArgs dist;
  auto* cd = app.add_subcommand("dist", "evaluate a family CDF/survival at points");
  cd->add_option("--family", dist.family, "frechet|weibull|gumbel|pareto|beta|exponential|dagum");
  cd->add_option("--alpha", dist.alpha, "tail index (positive; sign handled per family)");
  cd->add_option("--grid-csv", dist.grid_csv, "load a step CDF from two-column CSV instead");
  cd->add_option("--x", dist.xs, "evaluation points")->expected(-1)->required();
  cd->add_option("--format", dist.format, "csv|json");
  cd->add_option("--out", dist.out, "output file (default stdout)");

  PowerArgs power;
  auto* cp = app.add_subcommand("power", "evaluate an n-fold max-convolution power");
  cp->add_option("--family", power.family);
  cp->add_option("--alpha", power.alpha);
  cp->add_option("--kind", power.kind, "classical|free|boolean");
  cp->add_option("--n", power.n, "power order (real >= 1)");
  cp->add_option("--x", power.xs)->expected(-1)->required();
  cp->add_option("--format", power.format, "csv|json");
  cp->add_option("--out", power.out);

  ScalingArgs scal;
  auto* cs = app.add_subcommand("scaling", "normalization sequences a_n, a_n', A_n");
  cs->add_option("--family", scal.family);
  cs->add_option("--alpha", scal.alpha);
  cs->add_option("--n", scal.n_spec, "start:stop:points (geometric), list, or single n");
  cs->add_option("--format", scal.format, "csv|json");
  cs->add_option("--out", scal.out);

  RhoArgs rho;
  auto* cr = app.add_subcommand("rho", "crossover scale and its inverse");
  cr->add_option("--alpha", rho.alpha);
  cr->add_option("--aux-file", rho.aux_file, "auxiliary bound knots (default alpha/(x^a-1))");
  cr->add_option("--x", rho.xs, "points for rho(x)")->expected(-1);
  cr->add_option("--t", rho.ts, "points for rho_inverse(t)")->expected(-1);
  cr->add_option("--format", rho.format, "csv|json");
  cr->add_option("--out", rho.out);

  VerifyArgs verify;
  auto* cv = app.add_subcommand("verify", "run a verification suite");
  cv->add_option("--suite", verify.suite,
                 "vonmises|sandwich|dagum-lipschitz|tail-chain|homomorphism")
      ->required();
  cv->add_option("--family", verify.family);
  cv->add_option("--alpha", verify.alpha);
  cv->add_option("--alpha1", verify.alpha1);
  cv->add_option("--alpha2", verify.alpha2);
  cv->add_option("--n", verify.n);
  cv->add_option("--points", verify.points);
  cv->add_option("--samples", verify.samples);
  cv->add_option("--grid-lo", verify.grid_lo);
  cv->add_option("--grid-hi", verify.grid_hi);
  cv->add_option("--grid-points", verify.grid_points);
  cv->add_option("--tol", verify.tol);
  cv->add_option("--out", verify.out);

  RateArgs rate;
  auto* cx = app.add_subcommand("rate", "convergence-rate experiment with certified brackets");
  cx->add_option("--kind", rate.kind, "boolean|free");
  cx->add_option("--family", rate.family);
  cx->add_option("--alpha", rate.alpha);
  cx->add_option("--n", rate.n_spec, "start:stop:points (geometric), list, or single n");
  cx->add_option("--tol", rate.tol, "bracket tolerance")->check(CLI::Range(1e-300, 1e-2));
  cx->add_option("--aux-file", rate.aux_file);
  cx->add_option("--format", rate.format, "csv|json|svg");
  cx->add_option("--out", rate.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cd) return cmd_dist(dist);
    if (*cp) return cmd_power(power);
    if (*cs) return cmd_scaling(scal);
    if (*cr) return cmd_rho(rho);
    if (*cv) return cmd_verify(verify);
    if (*cx) return cmd_rate(rate);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
