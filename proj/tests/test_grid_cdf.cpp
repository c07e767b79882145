#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "maxconv/grid_cdf.hpp"

using namespace maxconv;

TEST_CASE("grid generalized inverse") {
  const GridCdf g({1.0, 2.0, 3.0}, {0.3, 0.7, 1.0});
  CHECK(g.quantile(0.5) == 2.0);
  CHECK(g.quantile(0.3) == 1.0);  // infimum attained at equality
  CHECK(g.quantile(0.0) == 1.0);  // first knot
  CHECK(g.quantile(1.0) == 3.0);
  CHECK_THROWS_AS(g.quantile(-0.1), std::domain_error);
  CHECK_THROWS_AS(g.quantile(1.5), std::domain_error);
}

TEST_CASE("grid step evaluation is right-continuous") {
  const GridCdf g({1.0, 2.0, 3.0}, {0.3, 0.7, 1.0});
  CHECK(g.cdf(0.5) == 0.0);
  CHECK(g.cdf(1.0) == 0.3);
  CHECK(g.cdf(1.999) == 0.3);
  CHECK(g.cdf(2.0) == 0.7);
  CHECK(g.cdf(10.0) == 1.0);
  CHECK(g.survival(2.0) == Catch::Approx(0.3));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridCdf({1.0, 1.0}, {0.5, 1.0}), std::invalid_argument);  // knot tie
  CHECK_THROWS_AS(GridCdf({1.0, 2.0}, {0.7, 0.5}), std::invalid_argument);  // decreasing p
  CHECK_THROWS_AS(GridCdf({1.0, 2.0}, {0.5, 0.9}), std::invalid_argument);  // not ending at 1
  CHECK_THROWS_AS(GridCdf({}, {}), std::invalid_argument);
  CHECK_NOTHROW(GridCdf({1.0, 2.0, 3.0}, {0.5, 0.5, 1.0}));  // flat region is fine
}

TEST_CASE("grid CSV loading") {
  std::istringstream in(
      "x,p\n"
      "# empirical tail\n"
      "1.0,0.25\n"
      "2.5 0.5\n"
      "4.0,1.0\n");
  const GridCdf g = GridCdf::from_csv(in);
  CHECK(g.knots() == std::vector<double>{1.0, 2.5, 4.0});
  CHECK(g.cdf(2.5) == 0.5);

  std::istringstream bad("1.0,0.5\n0.5,1.0\n");
  CHECK_THROWS_AS(GridCdf::from_csv(bad), std::invalid_argument);  // x not increasing
}

TEST_CASE("grid wraps as a Cdf") {
  const Cdf c = GridCdf({0.0, 1.0, 2.0}, {0.1, 0.6, 1.0}).as_cdf();
  CHECK(c.cdf(1.5) == 0.6);
  CHECK(c.quantile(0.6) == 1.0);
  CHECK_FALSE(c.has_density());
  CHECK(c.support_lo() == 0.0);
}
