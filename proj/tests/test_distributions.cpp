#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <mpfr.h>

#include "maxconv/families.hpp"

using namespace maxconv;

namespace {

// 256-bit evaluation of the survival functions straight from the formulas.
double survival_oracle(const EvFamily& f, double x) {
  mpfr_t t, one;
  mpfr_init2(t, 256);
  mpfr_init2(one, 256);
  mpfr_set_ui(one, 1, MPFR_RNDN);
  switch (f.kind) {
    case Kind::classical:  // 1 - exp(-x^{-a}), a > 0, x > 0
      mpfr_set_d(t, x, MPFR_RNDN);
      mpfr_pow_si(t, t, -1, MPFR_RNDN);
      mpfr_abs(t, t, MPFR_RNDN);
      {
        mpfr_t e;
        mpfr_init2(e, 256);
        mpfr_set_d(e, f.alpha, MPFR_RNDN);
        mpfr_t lx;
        mpfr_init2(lx, 256);
        mpfr_set_d(lx, x, MPFR_RNDN);
        mpfr_log(lx, lx, MPFR_RNDN);
        mpfr_mul(lx, lx, e, MPFR_RNDN);
        mpfr_neg(lx, lx, MPFR_RNDN);
        mpfr_exp(t, lx, MPFR_RNDN);  // x^{-a}
        mpfr_neg(t, t, MPFR_RNDN);
        mpfr_exp(t, t, MPFR_RNDN);  // exp(-x^{-a})
        mpfr_sub(t, one, t, MPFR_RNDN);
        mpfr_clear(e);
        mpfr_clear(lx);
      }
      break;
    case Kind::free: {  // x^{-a}
      mpfr_t lx;
      mpfr_init2(lx, 256);
      mpfr_set_d(lx, x, MPFR_RNDN);
      mpfr_log(lx, lx, MPFR_RNDN);
      mpfr_mul_d(lx, lx, -f.alpha, MPFR_RNDN);
      mpfr_exp(t, lx, MPFR_RNDN);
      mpfr_clear(lx);
      break;
    }
    case Kind::boolean: {  // x^{-a} / (1 + x^{-a})
      mpfr_t lx;
      mpfr_init2(lx, 256);
      mpfr_set_d(lx, x, MPFR_RNDN);
      mpfr_log(lx, lx, MPFR_RNDN);
      mpfr_mul_d(lx, lx, -f.alpha, MPFR_RNDN);
      mpfr_exp(t, lx, MPFR_RNDN);
      mpfr_t d;
      mpfr_init2(d, 256);
      mpfr_add(d, t, one, MPFR_RNDN);
      mpfr_div(t, t, d, MPFR_RNDN);
      mpfr_clear(d);
      mpfr_clear(lx);
      break;
    }
  }
  const double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  mpfr_clear(one);
  return out;
}

std::vector<EvFamily> all_families() {
  return {
      EvFamily(Kind::classical, 1.0),  EvFamily(Kind::classical, 2.0),
      EvFamily(Kind::classical, -2.0), EvFamily(Kind::classical, 0.0),
      EvFamily(Kind::free, 1.0),       EvFamily(Kind::free, 2.0),
      EvFamily(Kind::free, -2.0),      EvFamily(Kind::free, 0.0),
      EvFamily(Kind::boolean, 1.0),    EvFamily(Kind::boolean, 2.0),
  };
}

}  // namespace

TEST_CASE("closed-form CDF values") {
  CHECK(ev_cdf(EvFamily(Kind::classical, 1.0), 1.0) == Catch::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(ev_cdf(EvFamily(Kind::boolean, 2.0), 2.0) == Catch::Approx(0.8).epsilon(1e-14));
  CHECK(ev_cdf(EvFamily(Kind::free, 1.0), 0.5) == 0.0);  // support starts at 1
  CHECK(ev_cdf(EvFamily(Kind::classical, 1.0), 0.0) == 0.0);
  CHECK(ev_cdf(EvFamily(Kind::classical, -2.0), 0.0) == 1.0);
  CHECK(ev_cdf(EvFamily(Kind::free, -2.0), -1.5) == 0.0);
  CHECK(ev_cdf(EvFamily(Kind::free, -2.0), 0.5) == 1.0);
  CHECK(ev_cdf(EvFamily(Kind::free, 0.0), 1.0) == Catch::Approx(1 - std::exp(-1.0)));
}

TEST_CASE("survival values and stability") {
  CHECK(ev_survival(EvFamily(Kind::boolean, 1.0), 1.0) == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(ev_survival(EvFamily(Kind::free, 2.0), 2.0) == Catch::Approx(0.25).epsilon(1e-14));
  // stable complement: 12+ digits where 1 - cdf would lose everything
  const EvFamily fr(Kind::classical, 1.0);
  const double s = ev_survival(fr, 1e6);
  CHECK(s == Catch::Approx(survival_oracle(fr, 1e6)).epsilon(1e-12));
  CHECK(s == Catch::Approx(1e-6).epsilon(1e-5));
}

TEST_CASE("survival accuracy against 256-bit oracle deep in the tail") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (Kind kind : {Kind::classical, Kind::free, Kind::boolean}) {
      const EvFamily f(kind, alpha);
      for (double p : {1.0 - 1e-3, 1.0 - 1e-6, 1.0 - 1e-9}) {
        const double x = ev_quantile(f, p);
        const double got = ev_survival(f, x);
        const double want = survival_oracle(f, x);
        INFO(family_name(f) << " alpha=" << alpha << " p=" << p);
        CHECK(got == Catch::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("cdf + survival consistency in the bulk") {
  std::mt19937_64 rng(7);
  for (const auto& f : all_families()) {
    std::uniform_real_distribution<double> ps(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
      const double x = ev_quantile(f, ps(rng));
      CHECK(std::fabs(ev_cdf(f, x) + ev_survival(f, x) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("quantile closed forms") {
  CHECK(ev_quantile(EvFamily(Kind::boolean, 1.0), 0.5) == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(ev_quantile(EvFamily(Kind::free, 1.0), 0.5) == Catch::Approx(2.0).epsilon(1e-14));
  // classical at p = e^{-1/n} gives n^{1/alpha}
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double n : {1.0, 10.0, 1e4}) {
      const double p = std::exp(-1.0 / n);
      CHECK(ev_quantile(EvFamily(Kind::classical, alpha), p) ==
            Catch::Approx(std::pow(n, 1.0 / alpha)).epsilon(1e-12));
    }
  }
}

TEST_CASE("quantile endpoints and domain errors") {
  const EvFamily fr(Kind::classical, 1.0);
  CHECK(ev_quantile(fr, 0.0) == 0.0);
  CHECK(std::isinf(ev_quantile(fr, 1.0)));
  CHECK(ev_quantile(EvFamily(Kind::free, 1.0), 0.0) == 1.0);
  CHECK(ev_quantile(EvFamily(Kind::free, -2.0), 0.0) == -1.0);
  CHECK(ev_quantile(EvFamily(Kind::free, -2.0), 1.0) == 0.0);
  CHECK(ev_quantile(EvFamily(Kind::classical, -2.0), 1.0) == 0.0);
  CHECK(std::isinf(ev_quantile(EvFamily(Kind::classical, 0.0), 0.0)));
  CHECK_THROWS_AS(ev_quantile(fr, -0.1), std::domain_error);
  CHECK_THROWS_AS(ev_quantile(fr, 1.1), std::domain_error);
}

TEST_CASE("boolean family rejects alpha <= 0") {
  CHECK_THROWS_AS(EvFamily(Kind::boolean, 0.0), std::domain_error);
  CHECK_THROWS_AS(EvFamily(Kind::boolean, -1.0), std::domain_error);
  CHECK_NOTHROW(EvFamily(Kind::classical, -1.0));
  CHECK_NOTHROW(EvFamily(Kind::free, 0.0));
}

TEST_CASE("monotonicity of every family") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ps(1e-4, 1.0 - 1e-4);
  for (const auto& f : all_families()) {
    for (int i = 0; i < 10000; ++i) {
      double p1 = ps(rng), p2 = ps(rng);
      if (p1 > p2) std::swap(p1, p2);
      const double x1 = ev_quantile(f, p1), x2 = ev_quantile(f, p2);
      if (!(x1 < x2)) continue;
      CHECK(ev_cdf(f, x1) <= ev_cdf(f, x2));
    }
  }
}

TEST_CASE("quantile-cdf round trip") {
  // Relative agreement of q(F(x)) with x. Near p = 1 the stored CDF value
  // resolves the tail only to ~eps/(1-p), which caps the attainable
  // accuracy at the extreme end of the p-range.
  std::vector<EvFamily> fams = {
      EvFamily(Kind::classical, 1.0), EvFamily(Kind::classical, 2.0),
      EvFamily(Kind::free, 1.0),      EvFamily(Kind::free, 2.0),
      EvFamily(Kind::boolean, 1.0),   EvFamily(Kind::boolean, 2.0),
      EvFamily(Kind::classical, -2.0), EvFamily(Kind::free, -2.0),
      EvFamily(Kind::classical, 0.0),  EvFamily(Kind::free, 0.0),
  };
  for (const auto& f : fams) {
    for (int i = 0; i <= 600; ++i) {
      const double p = 1e-6 + (1.0 - 2e-6) * i / 600.0;
      const double x = ev_quantile(f, p);
      const double x2 = ev_quantile(f, ev_cdf(f, x));
      const double scale = std::max(std::fabs(x), 1e-3);
      INFO(family_name(f) << " p=" << p);
      if (p <= 1.0 - 1e-5) {
        CHECK(std::fabs(x2 - x) / scale < 1e-10);
      } else {
        CHECK(std::fabs(x2 - x) / scale < 5e-10);
      }
    }
  }
}

TEST_CASE("density matches central finite differences") {
  for (const auto& f : {EvFamily(Kind::classical, 1.0), EvFamily(Kind::classical, 2.0),
                        EvFamily(Kind::boolean, 1.0), EvFamily(Kind::boolean, 2.0),
                        EvFamily(Kind::free, 2.0), EvFamily(Kind::free, -2.0),
                        EvFamily(Kind::free, 0.0), EvFamily(Kind::classical, -2.0),
                        EvFamily(Kind::classical, 0.0)}) {
    const double xa = ev_quantile(f, 0.05), xb = ev_quantile(f, 0.99);
    for (int i = 0; i <= 50; ++i) {
      const double x = xa + (xb - xa) * i / 50.0;
      const double h = std::fabs(x) * 1e-5;
      if (h < 1e-12) continue;  // supports crossing 0 have no usable step there
      const double fd = (ev_cdf(f, x + h) - ev_cdf(f, x - h)) / (2 * h);
      INFO(family_name(f) << " x=" << x);
      CHECK(ev_density(f, x) == Catch::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("densities are nonnegative and vanish off-support") {
  CHECK(ev_density(EvFamily(Kind::classical, 1.0), -1.0) == 0.0);
  CHECK(ev_density(EvFamily(Kind::free, 2.0), 0.5) == 0.0);
  CHECK(ev_density(EvFamily(Kind::boolean, 2.0), -0.5) == 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ps(1e-3, 1 - 1e-3);
  for (const auto& f : all_families())
    for (int i = 0; i < 500; ++i)
      CHECK(ev_density(f, ev_quantile(f, ps(rng))) >= 0.0);
}

TEST_CASE("Cdf channel validation") {
  Cdf::Spec s;
  s.cdf = [](double) { return 0.5; };
  CHECK_THROWS_AS(Cdf(std::move(s)), std::invalid_argument);  // survival missing

  Cdf::Spec t;
  t.cdf = [](double) { return 0.5; };
  t.survival = [](double) { return 0.5; };
  const Cdf c{std::move(t)};
  CHECK_FALSE(c.has_density());
  CHECK_FALSE(c.has_quantile());
  CHECK_THROWS_AS(c.density(1.0), std::logic_error);
  CHECK_THROWS_AS(c.quantile(0.5), std::logic_error);
  CHECK_THROWS_AS(rescale(c, 0.0), std::domain_error);
  CHECK_THROWS_AS(rescale(c, -2.0), std::domain_error);
}

TEST_CASE("make_cdf wires all channels") {
  const Cdf c = make_cdf(EvFamily(Kind::boolean, 2.0));
  CHECK(c.cdf(2.0) == Catch::Approx(0.8));
  CHECK(c.survival(2.0) == Catch::Approx(0.2));
  CHECK(c.has_density());
  CHECK(c.has_quantile());
  CHECK(c.quantile(0.8) == Catch::Approx(2.0).epsilon(1e-13));
  CHECK(c.support_lo() == 0.0);

  const Cdf scaled = rescale(c, 2.0);
  CHECK(scaled.cdf(1.0) == Catch::Approx(0.8));
  CHECK(scaled.quantile(0.8) == Catch::Approx(1.0).epsilon(1e-13));
  CHECK(scaled.density(1.0) == Catch::Approx(2.0 * c.density(2.0)).epsilon(1e-13));
}
