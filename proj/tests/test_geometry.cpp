#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rfp/error.hpp"
#include "rfp/geometry.hpp"

using namespace rfp;

TEST_CASE("alpha closed forms to four decimals") {
  CHECK(layout_alpha(LayoutKind::Highway) == 0.5);
  CHECK(std::abs(layout_alpha(LayoutKind::Square) - 0.5411) <= 5e-5);
  CHECK(std::abs(layout_alpha(LayoutKind::Hexagonal) - 0.6080) <= 5e-5);
  CHECK(std::abs(layout_alpha(LayoutKind::Circle) - 0.6667) <= 5e-5);
}

TEST_CASE("alpha closed forms agree with polar quadrature") {
  CHECK(std::abs(layout_alpha(LayoutKind::Square) - oracle::polygon_mean_distance(4)) < 1e-10);
  CHECK(std::abs(layout_alpha(LayoutKind::Hexagonal) - oracle::polygon_mean_distance(6)) < 1e-10);
  CHECK(std::abs(layout_alpha(LayoutKind::Highway) - oracle::segment_mean_distance()) < 1e-9);
  // A regular polygon with many sides approaches the circle.
  CHECK(std::abs(layout_alpha(LayoutKind::Circle) - oracle::polygon_mean_distance(2000)) < 1e-6);
}

TEST_CASE("zeta and neighbor counts") {
  CHECK(layout_zeta(LayoutKind::Highway) == 1.0);
  CHECK(std::abs(layout_zeta(LayoutKind::Square) - 0.70711) <= 1e-5);
  CHECK(layout_zeta(LayoutKind::Hexagonal) == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(layout_neighbor_count(LayoutKind::Highway) == 2);
  CHECK(layout_neighbor_count(LayoutKind::Square) == 8);
  CHECK(layout_neighbor_count(LayoutKind::Hexagonal) == 6);

  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of([] { layout_zeta(LayoutKind::Circle); }) == ErrorCode::NoTessellation);
  CHECK(code_of([] { layout_neighbor_count(LayoutKind::Circle); }) == ErrorCode::NoTessellation);
  const Layout circle = Layout::of(LayoutKind::Circle);
  CHECK(circle.alpha() == doctest::Approx(2.0 / 3.0));
  CHECK(code_of([&] { (void)circle.zeta(); }) == ErrorCode::NoTessellation);
}

TEST_CASE("alpha stays below zeta and is ordered across layouts") {
  for (LayoutKind k : kTessellatingLayouts) CHECK(layout_alpha(k) < layout_zeta(k));
  CHECK(layout_alpha(LayoutKind::Highway) < layout_alpha(LayoutKind::Square));
  CHECK(layout_alpha(LayoutKind::Square) < layout_alpha(LayoutKind::Hexagonal));
  CHECK(layout_alpha(LayoutKind::Hexagonal) < layout_alpha(LayoutKind::Circle));
}

TEST_CASE("layout names round-trip") {
  for (LayoutKind k : kAllLayouts) CHECK(parse_layout_kind(to_string(k)) == k);
  CHECK_FALSE(parse_layout_kind("triangle").has_value());
}

TEST_CASE("cell_contains examples") {
  CHECK(cell_contains(LayoutKind::Hexagonal, {0.0, 0.0}));
  CHECK_FALSE(cell_contains(LayoutKind::Square, {1.01, 0.0}));
  CHECK(cell_contains(LayoutKind::Hexagonal, {0.99, 0.0}));
  CHECK_FALSE(cell_contains(LayoutKind::Hexagonal, {0.0, 0.87}));
  CHECK(cell_contains(LayoutKind::Highway, {-1.0, 0.0}));
  CHECK_FALSE(cell_contains(LayoutKind::Highway, {0.5, 1e-9}));
  CHECK(cell_contains(LayoutKind::Circle, {0.6, 0.8}));
}

TEST_CASE("cell_contains agrees with a polygon test") {
  const auto hexagon = oracle::regular_polygon(6, 0.0);
  const auto square = oracle::regular_polygon(4, std::numbers::pi / 4.0);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  int compared = 0;
  for (int i = 0; i < 20000; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    CHECK(cell_contains(LayoutKind::Hexagonal, {x, y}) == oracle::inside_polygon(hexagon, x, y));
    CHECK(cell_contains(LayoutKind::Square, {x, y}) == oracle::inside_polygon(square, x, y));
    ++compared;
  }
  CHECK(compared == 20000);
}

TEST_CASE("cell_contains is invariant under the cell's symmetry group") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  auto images = [](int order, double x, double y) {
    std::vector<Point2> out;
    for (int k = 0; k < order; ++k) {
      const double a = 2.0 * std::numbers::pi * k / order;
      const double rx = std::cos(a) * x - std::sin(a) * y;
      const double ry = std::sin(a) * x + std::cos(a) * y;
      out.push_back({rx, ry});
      out.push_back({rx, -ry});  // reflection across the x axis
    }
    return out;
  };
  struct Case {
    LayoutKind kind;
    int order;
  };
  for (Case c : {Case{LayoutKind::Hexagonal, 6}, Case{LayoutKind::Square, 4},
                 Case{LayoutKind::Circle, 12}}) {
    for (int i = 0; i < 3000; ++i) {
      const Point2 p{u(rng), u(rng)};
      const bool expected = cell_contains(c.kind, p);
      bool near_boundary = false;
      // Rotations move points by rounding error; skip points that sit on an edge.
      for (double eps : {-1e-9, 1e-9}) {
        near_boundary |= cell_contains(c.kind, {p.x * (1 + eps), p.y * (1 + eps)}) != expected;
      }
      if (near_boundary) continue;
      for (Point2 q : images(c.order, p.x, p.y)) CHECK(cell_contains(c.kind, q) == expected);
    }
  }
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0, 1.2}) {
    CHECK(cell_contains(LayoutKind::Highway, {x, 0.0}) ==
          cell_contains(LayoutKind::Highway, {-x, 0.0}));
  }
}

TEST_CASE("Monte Carlo alpha") {
  SUBCASE("highway within 3 standard errors") {
    const auto est = estimate_alpha_monte_carlo(LayoutKind::Highway, 1'000'000, 2024);
    CHECK(std::abs(est.estimate - 0.5) <= 3.0 * est.standard_error);
  }
  SUBCASE("hexagonal and circle within 1e-3 at 1e7 samples") {
    const auto hex = estimate_alpha_monte_carlo(LayoutKind::Hexagonal, 10'000'000, 11);
    CHECK(std::abs(hex.estimate - 0.6080) <= 1e-3);
    const auto circle = estimate_alpha_monte_carlo(LayoutKind::Circle, 10'000'000, 11);
    CHECK(std::abs(circle.estimate - 2.0 / 3.0) <= 1e-3);
  }
  SUBCASE("too few samples") {
    CHECK_THROWS_AS(estimate_alpha_monte_carlo(LayoutKind::Square, 999, 1), Error);
    CHECK_THROWS_AS(estimate_alpha_monte_carlo_serial(LayoutKind::Square, 10, 1), Error);
  }
  SUBCASE("deterministic, and parallel matches the serial reference bit for bit") {
    for (LayoutKind k : kAllLayouts) {
      const auto a = estimate_alpha_monte_carlo(k, 300'001, 99);
      const auto b = estimate_alpha_monte_carlo(k, 300'001, 99);
      const auto s = estimate_alpha_monte_carlo_serial(k, 300'001, 99);
      CHECK(a.estimate == b.estimate);
      CHECK(a.estimate == s.estimate);
      CHECK(a.standard_error == s.standard_error);
    }
    CHECK(estimate_alpha_monte_carlo(LayoutKind::Square, 100'000, 1).estimate !=
          estimate_alpha_monte_carlo(LayoutKind::Square, 100'000, 2).estimate);
  }
}

TEST_CASE("Monte Carlo alpha converges within 4 standard errors across seeds") {
  for (LayoutKind k : kAllLayouts) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto est = estimate_alpha_monte_carlo(k, 10'000'000, seed);
      CAPTURE(to_string(k));
      CAPTURE(seed);
      CHECK(std::abs(est.estimate - layout_alpha(k)) <= 4.0 * est.standard_error);
    }
  }
}
