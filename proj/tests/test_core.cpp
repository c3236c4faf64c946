#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cpcfif/core.hpp"
#include "doctest.h"

using namespace cpcfif;

namespace {

double ulps(double x, int count) {
  return static_cast<double>(count) * std::numeric_limits<double>::epsilon() *
         std::max(1.0, std::fabs(x));
}

}  // namespace

TEST_CASE("DataSet validation") {
  CHECK_THROWS_AS(DataSet({0, 1}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(DataSet({0, 1, 1}, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(DataSet({0, 2, 1}, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(DataSet({0, 1, std::numeric_limits<double>::quiet_NaN()},
                          {0, 1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DataSet({0, 1, 2}, {0, 1}), std::invalid_argument);
  const DataSet d({0, 1, 3}, {1, 2, 0});
  CHECK(d.size() == 3);
  CHECK(d.intervals() == 2);
  CHECK(d.span() == 3.0);
}

TEST_CASE("build_affine_maps: uniform partition") {
  const DataSet d({0, 1, 2, 3, 4}, {0, 2, -1, 2, 0});
  const AffineMaps maps = build_affine_maps(d);
  for (std::size_t s = 0; s < 4; ++s) {
    CHECK(maps.a(s) == 0.25);
    CHECK(maps.b(s) == static_cast<double>(s));
  }
}

TEST_CASE("build_affine_maps: direct formula and symmetry") {
  const DataSet d1({0, 1, 3}, {0, 0, 0});
  const AffineMaps m1 = build_affine_maps(d1);
  CHECK(m1.a(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(m1.a(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
  CHECK(m1.b(0) == 0.0);
  CHECK(m1.b(1) == 1.0);

  const DataSet d2({-2, 0, 2}, {0, 0, 0});
  const AffineMaps m2 = build_affine_maps(d2);
  CHECK(m2.a(0) == 0.5);
  CHECK(m2.a(1) == 0.5);
  CHECK(m2.b(0) == -1.0);
  CHECK(m2.b(1) == 1.0);
}

TEST_CASE("affine maps: endpoint conditions, sum, tiling") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> gap(0.05, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> xs{gap(gen)};
    const std::size_t m = 3 + rep % 6;
    for (std::size_t i = 0; i < m; ++i) xs.push_back(xs.back() + gap(gen));
    std::vector<double> us(xs.size(), 0.0);
    const DataSet d(xs, us);
    const AffineMaps maps = build_affine_maps(d);

    double sum_a = 0.0;
    for (std::size_t s = 0; s < maps.count(); ++s) {
      sum_a += maps.a(s);
      CHECK(maps.a(s) > 0.0);
      CHECK(maps.a(s) < 1.0);
      // L_s(x_1) = x_s and L_s(x_M) = x_{s+1} to within 2 ulp
      CHECK(std::fabs(maps.apply(s, d.x_min()) - d.x(s)) <=
            ulps(d.x(s), 2));
      CHECK(maps.apply(s, d.x_max()) ==
            doctest::Approx(d.x(s + 1)).epsilon(4e-16));
    }
    CHECK(sum_a == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("round trip L_s^{-1}(L_s(x)) = x within 4 ulp") {
  const DataSet d({0.3, 1.1, 2.7, 3.4, 9.2}, {0, 0, 0, 0, 0});
  const AffineMaps maps = build_affine_maps(d);
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> xr(d.x_min(), d.x_max());
  for (int rep = 0; rep < 500; ++rep) {
    const double x = xr(gen);
    for (std::size_t s = 0; s < maps.count(); ++s) {
      const double back = maps.invert(s, maps.apply(s, x));
      CHECK(back == doctest::Approx(x).epsilon(1e-14));
    }
  }
}

TEST_CASE("locate_interval conventions") {
  const DataSet d({0, 1, 2, 3, 4}, {0, 0, 0, 0, 0});
  CHECK(locate_interval(d, 1.5) == 1);   // one-based interval 2
  CHECK(locate_interval(d, 4.0) == 3);   // last interval
  CHECK(locate_interval(d, 1.0) == 1);   // left-closed tie-break
  CHECK(locate_interval(d, 0.0) == 0);
  CHECK_THROWS_AS(locate_interval(d, -0.1), std::domain_error);
  CHECK_THROWS_AS(locate_interval(d, 4.1), std::domain_error);
}

TEST_CASE("locate_interval is consistent with the map images") {
  const DataSet d({0.0, 0.4, 1.0, 2.5, 4.0}, {0, 0, 0, 0, 0});
  const AffineMaps maps = build_affine_maps(d);
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> xr(d.x_min(), d.x_max());
  for (int rep = 0; rep < 300; ++rep) {
    const double x = xr(gen);
    const std::size_t s = locate_interval(d, x);
    CHECK(x >= d.x(s));
    CHECK(x <= d.x(s + 1));
    // the image L_s([x_1, x_M]) contains x
    CHECK(maps.apply(s, d.x_min()) <= x + 1e-12);
    CHECK(maps.apply(s, d.x_max()) >= x - 1e-12);
  }
}

TEST_CASE("ScalingVector validation") {
  CHECK_THROWS_AS(ScalingVector({0.5, 1.0}), std::domain_error);
  CHECK_THROWS_AS(ScalingVector({0.5, -1.2}), std::domain_error);
  const ScalingVector ok({0.5, -0.25});
  CHECK(ok.max_abs() == 0.5);
  CHECK_THROWS_AS(ScalingVector({0.5, 0.2}, {0.4, 0.4}), std::domain_error);
  const ScalingVector bounded({0.3, -0.2}, {0.4, 0.4});
  CHECK(bounded.has_bounds());
}

TEST_CASE("Grid spacing and endpoints") {
  const Grid g(0.0, 4.0, 1001);
  CHECK(g.size() == 1001);
  CHECK(g.point(0) == 0.0);
  CHECK(g.point(1000) == 4.0);
  const double h = g.spacing();
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    CHECK(std::fabs((g.point(i + 1) - g.point(i)) - h) <= ulps(h, 4));
  CHECK_THROWS_AS(Grid(0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1.0, 0.0, 8), std::invalid_argument);
}
