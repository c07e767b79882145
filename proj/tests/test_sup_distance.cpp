#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "maxconv/families.hpp"
#include "maxconv/grid_cdf.hpp"
#include "maxconv/semigroup.hpp"
#include "maxconv/sup_distance.hpp"

#include "support/oracles.hpp"

using namespace maxconv;

TEST_CASE("identical functions bracket at zero") {
  const Cdf d = make_cdf(EvFamily(Kind::boolean, 1.0));
  const auto b = sup_distance(d, d, 1e-6, 1e6, 1e-9);
  CHECK(b.lo == 0.0);
  CHECK(b.hi == 0.0);
  CHECK(b.converged);
}

TEST_CASE("Dagum pair bracket contains the dense-grid oracle") {
  const Cdf d1 = make_cdf(EvFamily(Kind::boolean, 1.0));
  const Cdf d2 = make_cdf(EvFamily(Kind::boolean, 2.0));
  const auto b = sup_distance(d1, d2, 1e-6, 1e6, 1e-6);
  REQUIRE(b.converged);
  CHECK(b.hi - b.lo <= 1e-6);
  const double oracle = oracles::grid_sup([&](double x) { return d1.cdf(x); },
                                          [&](double x) { return d2.cdf(x); }, 1e-6, 1e6,
                                          10'000'001);
  CHECK(oracle >= b.lo - 1e-6);
  CHECK(oracle <= b.hi);
  CHECK(b.hi < std::exp(-1.0));  // Lipschitz bound e^{-1}|2-1|/1
  // the sup is symmetric about x = 1 and sits near 0.15
  CHECK(b.hi == Catch::Approx(0.150141553).epsilon(1e-4));
}

TEST_CASE("boolean Frechet power vs Dagum at n = 1e4, u-coordinate oracle") {
  const double n = 1e4;
  const Cdf base = make_cdf(EvFamily(Kind::classical, 1.0));
  const Cdf powered = rescale(power_cdf(base, n, Kind::boolean), n);  // a_n = n for alpha=1
  const Cdf limit = make_cdf(EvFamily(Kind::boolean, 1.0));
  SupOptions opt;
  opt.tol = 1e-9;
  const auto b = sup_distance_closed(powered, limit, 0.0, kInf, opt);
  REQUIRE(b.converged);
  CHECK(n * b.hi > 0.49);
  CHECK(n * b.hi < 0.51);
  CHECK(n * b.lo > 0.49);
  const double oracle = oracles::boolean_frechet_sup(n);
  CHECK(b.lo <= oracle + 1e-12);  // x-space evaluation noise vs the exact u-space form
  CHECK(oracle <= b.hi + 1e-12);
  CHECK(b.hi == Catch::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("bracket soundness on random parametric pairs", "[property]") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> alphas(0.5, 3.0);
  std::uniform_int_distribution<int> kinds(0, 2);
  const auto pick = [&]() {
    const Kind k = kinds(rng) == 0 ? Kind::classical : (kinds(rng) % 2 ? Kind::free : Kind::boolean);
    return make_cdf(EvFamily(k, alphas(rng)));
  };
  for (int trial = 0; trial < 100; ++trial) {
    const Cdf F = pick(), G = pick();
    const auto b = sup_distance(F, G, 1e-3, 1e3, 1e-5);
    REQUIRE(b.converged);
    const double oracle = oracles::grid_sup([&](double x) { return F.cdf(x); },
                                            [&](double x) { return G.cdf(x); }, 1e-3, 1e3,
                                            100'001);
    INFO(F.name() << " vs " << G.name());
    REQUIRE(b.lo <= oracle + 1e-8);  // grid oracle undershoots by O(spacing^2)
    REQUIRE(oracle <= b.hi + 1e-12);
    REQUIRE(b.hi - b.lo <= 1e-5);
  }
}

TEST_CASE("early stop certifies a threshold cheaply") {
  const Cdf d1 = make_cdf(EvFamily(Kind::boolean, 1.0));
  const Cdf d2 = make_cdf(EvFamily(Kind::boolean, 1.05));
  SupOptions tight;
  tight.tol = 1e-10;
  SupOptions stop;
  stop.tol = 1e-10;
  stop.stop_below = 0.1;  // true sup ~ 0.018 << 0.1
  const auto b_tight = sup_distance(d1, d2, 1e-6, 1e6, tight);
  const auto b_stop = sup_distance(d1, d2, 1e-6, 1e6, stop);
  CHECK(b_stop.hi <= 0.1);
  CHECK(b_stop.hi >= b_tight.lo);
  CHECK(b_stop.cells_used < b_tight.cells_used / 4);
}

TEST_CASE("cell budget exhaustion flags but stays valid") {
  const Cdf d1 = make_cdf(EvFamily(Kind::boolean, 1.0));
  const Cdf d2 = make_cdf(EvFamily(Kind::boolean, 2.0));
  SupOptions opt;
  opt.tol = 1e-12;
  opt.cell_budget = 50;
  const auto b = sup_distance(d1, d2, 1e-6, 1e6, opt);
  CHECK_FALSE(b.converged);
  CHECK(b.lo <= 0.150142);
  CHECK(b.hi >= 0.150141);
}

TEST_CASE("closure terms cover the unsubdivided regions") {
  const Cdf d1 = make_cdf(EvFamily(Kind::boolean, 1.0));
  const Cdf d2 = make_cdf(EvFamily(Kind::boolean, 2.0));
  SupOptions opt;
  opt.tol = 1e-7;
  const auto b = sup_distance_closed(d1, d2, 0.0, kInf, opt);
  CHECK(b.head_bound <= 1e-8 * 1.01);
  CHECK(b.tail_bound <= 1e-8 * 1.01);
  CHECK(b.hi == Catch::Approx(0.150141553).epsilon(1e-4));
  // over (0,1) the same pair has the same sup by the x -> 1/x symmetry
  const auto c = sup_distance_closed(d1, d2, 0.0, 1.0, opt);
  CHECK(c.hi == Catch::Approx(b.hi).epsilon(1e-4));
  CHECK(c.x_hi == 1.0);
  CHECK(c.tail_bound == 0.0);
}

TEST_CASE("step functions bracket correctly") {
  // discontinuous monotone inputs: the endpoint bound stays valid and the
  // engine settles cells at the resolution floor instead of looping
  const Cdf a = GridCdf({1.0, 2.0, 3.0}, {0.2, 0.6, 1.0}).as_cdf();
  const Cdf b = GridCdf({1.5, 2.5}, {0.5, 1.0}).as_cdf();
  SupOptions opt;
  opt.tol = 1e-12;
  const auto br = sup_distance(a, b, 0.0, 4.0, opt);
  // true sup: on [1, 1.5) |0.2 - 0| = 0.2; [1.5, 2) |0.2-0.5| = 0.3;
  // [2, 2.5) |0.6-0.5| = 0.1; [2.5, 3) |0.6-1| = 0.4; [3, 4] 0
  CHECK(br.lo == Catch::Approx(0.4));
  CHECK(br.hi == Catch::Approx(0.4));
  CHECK(br.converged);
}

TEST_CASE("degenerate and invalid inputs") {
  const Cdf d = make_cdf(EvFamily(Kind::boolean, 1.0));
  const Cdf e = make_cdf(EvFamily(Kind::boolean, 2.0));
  const auto pt = sup_distance(d, e, 2.0, 2.0, 1e-9);  // single point
  CHECK(pt.lo == Catch::Approx(std::fabs(d.cdf(2.0) - e.cdf(2.0))).margin(1e-15));
  CHECK(pt.hi == Catch::Approx(pt.lo).margin(1e-15));
  CHECK_THROWS_AS(sup_distance(d, e, 3.0, 2.0, 1e-9), std::domain_error);
  CHECK_THROWS_AS(sup_distance(d, e, 1.0, 2.0, -1.0), std::domain_error);
}
