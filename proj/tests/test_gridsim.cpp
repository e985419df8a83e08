#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rfp/comparison.hpp"
#include "rfp/error.hpp"
#include "rfp/gridsim.hpp"

using namespace rfp;

namespace {

const Deployment kDep{500.0, 1.0, 3.0, 700.0, 2.0, 1.0};

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rfp::Error");
  return ErrorCode::InvalidArgument;
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// One-pixel region centered on the multiple of `res` at (x, y).
Region pixel_at(double x, double y, double res) {
  return {x - res / 2, x + res / 2, y - res / 2, y + res / 2};
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("site lattices") {
  SUBCASE("highway") {
    const SiteLattice l = generate_sites(LayoutKind::Highway, 500.0, 1);
    REQUIRE(l.sites.size() == 3);
    CHECK(l.sites[0].x == 0.0);
    CHECK(l.sites[1].x == doctest::Approx(1000.0));
    CHECK(l.sites[2].x == doctest::Approx(-1000.0));
    for (Point2 p : l.sites) CHECK(p.y == 0.0);
    CHECK(l.first_ring_count() == 2);
  }
  SUBCASE("hexagonal ring") {
    const SiteLattice l = generate_sites(LayoutKind::Hexagonal, 500.0, 1);
    REQUIRE(l.sites.size() == 7);
    CHECK(l.first_ring_count() == 6);
    for (std::size_t i = 1; i < l.sites.size(); ++i) {
      CHECK(dist(l.sites[i], l.sites[0]) == doctest::Approx(866.0254).epsilon(1e-7));
      // Counter-clockwise from 30 degrees.
      const double angle = std::atan2(l.sites[i].y, l.sites[i].x) * 180.0 / std::numbers::pi;
      const double expected = 30.0 + 60.0 * static_cast<double>(i - 1);
      CHECK(std::remainder(angle - expected, 360.0) == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
  SUBCASE("square grid") {
    const SiteLattice l = generate_sites(LayoutKind::Square, 250.0, 1);
    REQUIRE(l.sites.size() == 9);
    CHECK(l.first_ring_count() == 8);
    const double s = 2.0 * 250.0 / std::sqrt(2.0);
    CHECK(s == doctest::Approx(353.55).epsilon(1e-5));
    for (Point2 p : l.sites) {
      CHECK(std::abs(std::remainder(p.x, s)) < 1e-9);
      CHECK(std::abs(std::remainder(p.y, s)) < 1e-9);
      CHECK(std::max(std::abs(p.x), std::abs(p.y)) <= s * (1 + 1e-12));
    }
  }
  SUBCASE("ring sizes") {
    for (int rings = 1; rings <= kMaxRings; ++rings) {
      CHECK(generate_sites(LayoutKind::Hexagonal, 100.0, rings).sites.size() ==
            static_cast<std::size_t>(1 + 3 * rings * (rings + 1)));
      CHECK(generate_sites(LayoutKind::Square, 100.0, rings).sites.size() ==
            static_cast<std::size_t>((2 * rings + 1) * (2 * rings + 1)));
      CHECK(generate_sites(LayoutKind::Highway, 100.0, rings).sites.size() ==
            static_cast<std::size_t>(2 * rings + 1));
    }
    const SiteLattice l = generate_sites(LayoutKind::Hexagonal, 100.0, 3);
    for (std::size_t i = 1; i < l.site_ring.size(); ++i) CHECK(l.site_ring[i] >= l.site_ring[i - 1]);
  }
  SUBCASE("errors") {
    CHECK(code_of([] { generate_sites(LayoutKind::Circle, 500.0, 2); }) == ErrorCode::NoTessellation);
    CHECK(code_of([] { generate_sites(LayoutKind::Hexagonal, 500.0, 0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { generate_sites(LayoutKind::Hexagonal, 500.0, 11); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { generate_sites(LayoutKind::Square, 0.0, 2); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("single-site field values") {
  const SiteLattice lone = single_site(LayoutKind::Hexagonal, 500.0);
  SUBCASE("power at d_max equals the sensitivity") {
    const RfpField f = compute_field(lone, kDep, 5.0, pixel_at(500.0, 0.0, 5.0));
    REQUIRE(f.pixels.size() == 1);
    CHECK(f.pixels[0].rfp_serving == doctest::Approx(kDep.p_r_th).epsilon(1e-12));
    CHECK(f.pixels[0].rfp_total == f.pixels[0].rfp_serving);
  }
  SUBCASE("25 m from the site") {
    const RfpField f = compute_field(lone, kDep, 5.0, pixel_at(25.0, 0.0, 5.0));
    REQUIRE(f.pixels.size() == 1);
    CHECK(f.pixels[0].x == 25.0);
    CHECK(std::abs(f.pixels[0].rfp_serving - 8000.0) <= 8000.0 * 1e-9);
  }
  SUBCASE("pixels on a site are excluded") {
    const RfpField f = compute_field(lone, kDep, 5.0, pixel_at(0.0, 0.0, 5.0));
    REQUIRE(f.pixels.size() == 1);
    CHECK(f.pixels[0].excluded);
    CHECK(std::isnan(f.pixels[0].rfp_serving));
    CHECK(std::isnan(f.pixels[0].rfp_total));
    CHECK(f.excluded_count() == 1);
  }
  SUBCASE("agrees with the fixed-distance closed form") {
    const auto [a, b] = scenario_deployments(ScenarioId::S2);
    const Layout hex = Layout::of(LayoutKind::Hexagonal);
    for (double beta : {0.05, 0.1, 0.2, 0.5}) {
      const double x = beta * a.d_max;
      const RfpField f1 = compute_field(single_site(LayoutKind::Hexagonal, a.d_max), a, 5.0,
                                        pixel_at(x, 0.0, 5.0));
      const RfpField f2 = compute_field(single_site(LayoutKind::Hexagonal, b.d_max), b, 5.0,
                                        pixel_at(x, 0.0, 5.0));
      REQUIRE(f1.pixels.size() == 1);
      REQUIRE(f2.pixels.size() == 1);
      CHECK(f1.pixels[0].rfp_serving ==
            doctest::Approx(rfp_fixed(a, hex, beta, NeighborMode::None)).epsilon(1e-12));
      if (x <= b.d_max) {
        const DeploymentPair pair{a, b, hex, beta, NeighborMode::None};
        CHECK(f1.pixels[0].rfp_serving / f2.pixels[0].rfp_serving ==
              doctest::Approx(delta_fixed(pair)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("pixel grid") {
  const SiteLattice lone = single_site(LayoutKind::Square, 100.0);
  SUBCASE("empty and degenerate regions") {
    CHECK(compute_field(lone, kDep, 1.0, Region{}).pixels.empty());
    CHECK(compute_field(lone, kDep, 1.0, Region{5.0, 5.0, 0.0, 10.0}).pixels.empty());
    CHECK(compute_field(lone, kDep, 1.0, Region{0.2, 0.8, 0.0, 10.0}).pixels.empty());
  }
  SUBCASE("half-open bounds and row-major order") {
    const RfpField f = compute_field(lone, kDep, 10.0, Region{10.0, 30.0, -10.0, 10.0});
    CHECK(f.nx == 2);
    CHECK(f.ny == 2);
    REQUIRE(f.pixels.size() == 4);
    const double expected[4][2] = {{10, -10}, {20, -10}, {10, 0}, {20, 0}};
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(f.pixels[i].x == expected[i][0]);
      CHECK(f.pixels[i].y == expected[i][1]);
    }
  }
  SUBCASE("highway fields are a single row on the site line") {
    const RfpField f = compute_field(generate_sites(LayoutKind::Highway, 100.0, 1), kDep, 10.0,
                                     Region{-50.0, 50.0, 40.0, 90.0});
    CHECK(f.ny == 1);
    CHECK(f.nx == 10);
    for (const Pixel& p : f.pixels) CHECK(p.y == 0.0);
  }
  SUBCASE("bad resolution") {
    CHECK_THROWS_AS(compute_field(lone, kDep, 0.0, Region{0, 1, 0, 1}), Error);
    CHECK_THROWS_AS(compute_field(lone, kDep, -1.0, Region{0, 1, 0, 1}), Error);
  }
}

TEST_CASE("equidistant pixels go to the lower site index") {
  const SiteLattice l = generate_sites(LayoutKind::Hexagonal, 500.0, 1);
  const double spacing = dist(l.sites[0], l.sites[2]);  // site 2 sits at 90 degrees
  const double res = spacing / 2.0;
  const RfpField f = compute_field(l, kDep, res, Region{-1.0, 1.0, 400.0, 500.0});
  REQUIRE(f.pixels.size() == 1);
  const Pixel& p = f.pixels[0];
  CHECK(p.x == 0.0);
  CHECK(p.y == res);
  CHECK(dist({p.x, p.y}, l.sites[0]) == doctest::Approx(dist({p.x, p.y}, l.sites[2])).epsilon(1e-14));
  CHECK(p.serving_site == 0);
}

TEST_CASE("field properties on full lattices") {
  for (LayoutKind kind : kTessellatingLayouts) {
    CAPTURE(to_string(kind));
    const SiteLattice l = generate_sites(kind, kDep.d_max, 2);
    const double zeta = layout_zeta(kind);
    const RfpField f = compute_field(l, kDep, 10.0, default_region(kind, kDep.d_max));
    REQUIRE(f.pixels.size() == f.nx * f.ny);
    REQUIRE_FALSE(f.pixels.empty());
    CHECK(f.first_ring_sites == l.first_ring_count());

    std::size_t central = 0;
    for (const Pixel& p : f.pixels) {
      if (p.excluded) continue;
      const Point2 at{p.x, p.y};
      // Total includes the serving term; serving site is the nearest.
      CHECK(p.rfp_total >= p.rfp_serving);
      CHECK(p.serving_distance == dist(at, l.sites[static_cast<std::size_t>(p.serving_site)]));
      for (Point2 s : l.sites) CHECK(p.serving_distance <= dist(at, s));
      // Every pixel lies in its serving cell, whose corners are d_max away.
      CHECK(p.serving_distance <= kDep.d_max * (1.0 + 1e-12));
      if (p.serving_site == 0) {
        ++central;
        CHECK(cell_contains(kind, {p.x / kDep.d_max, p.y / kDep.d_max}));
        // No other site comes closer than the inscribed radius.
        for (std::size_t i = 1; i < l.sites.size(); ++i) {
          CHECK(dist(at, l.sites[i]) >= zeta * kDep.d_max * (1.0 - 1e-12));
        }
      }
    }
    CHECK(central > 0);
  }
}

TEST_CASE("lattice field along a symmetry axis") {
  // The x axis runs from the central site to a hexagon vertex, between two first-ring sites.
  const SiteLattice l = generate_sites(LayoutKind::Hexagonal, kDep.d_max, 2);
  const Layout hex = Layout::of(LayoutKind::Hexagonal);
  for (double beta : {0.05, 0.1, 0.2, 0.5, 0.8}) {
    const RfpField f = compute_field(l, kDep, 5.0, pixel_at(beta * kDep.d_max, 0.0, 5.0));
    REQUIRE(f.pixels.size() == 1);
    const Pixel& p = f.pixels[0];
    CAPTURE(beta);
    CHECK(p.serving_site == 0);
    CHECK(rel_diff(p.rfp_serving, kDep.p_r_th * std::pow(beta, -kDep.gamma)) <= 1e-9);
    CHECK(p.rfp_total > p.rfp_serving);
    if (beta <= hex.zeta()) {
      CHECK(p.rfp_total <= rfp_upper_bound(kDep, p.serving_distance, hex, 6));
    }
  }
}

TEST_CASE("ring sensitivity") {
  for (LayoutKind kind : kTessellatingLayouts) {
    CAPTURE(to_string(kind));
    const Region r = default_region(kind, kDep.d_max);
    std::vector<RfpField> fields{compute_field(single_site(kind, kDep.d_max), kDep, 10.0, r)};
    for (int rings = 1; rings <= 4; ++rings) {
      fields.push_back(compute_field(generate_sites(kind, kDep.d_max, rings), kDep, 10.0, r));
    }
    double previous = INFINITY;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const double s = ring_sensitivity(fields[i], fields[i - 1]);
      CHECK(s > 0.0);
      CHECK(s < previous);
      previous = s;
    }
    CHECK(ring_sensitivity(fields[2], fields[2]) == 0.0);
    CHECK(previous < 0.05);
  }
  const Region r = default_region(LayoutKind::Square, kDep.d_max);
  const RfpField a = compute_field(single_site(LayoutKind::Square, kDep.d_max), kDep, 10.0, r);
  const RfpField b = compute_field(single_site(LayoutKind::Square, kDep.d_max), kDep, 20.0, r);
  CHECK_THROWS_AS(ring_sensitivity(a, b), Error);
}

TEST_CASE("parallel field matches the serial reference bit for bit") {
  for (LayoutKind kind : kTessellatingLayouts) {
    const SiteLattice l = generate_sites(kind, 300.0, 3);
    const Region r = default_region(kind, 300.0);
    const RfpField a = compute_field(l, kDep, 3.0, r);
    const RfpField b = compute_field_serial(l, kDep, 3.0, r);
    REQUIRE(a.pixels.size() == b.pixels.size());
    bool identical = a.nx == b.nx && a.ny == b.ny;
    for (std::size_t i = 0; i < a.pixels.size() && identical; ++i) {
      const Pixel& p = a.pixels[i];
      const Pixel& q = b.pixels[i];
      identical = same_bits(p.x, q.x) && same_bits(p.y, q.y) && p.serving_site == q.serving_site &&
                  same_bits(p.serving_distance, q.serving_distance) &&
                  same_bits(p.rfp_serving, q.rfp_serving) && same_bits(p.rfp_total, q.rfp_total) &&
                  p.excluded == q.excluded;
    }
    CHECK(identical);
    CHECK(export_field_csv(a) == export_field_csv(b));
  }
}

TEST_CASE("upper bound holds on multi-ring lattices") {
  const auto [dep1, dep2] = scenario_deployments(ScenarioId::S1);
  for (LayoutKind kind : kTessellatingLayouts) {
    for (const Deployment& dep : {dep1, dep2}) {
      CAPTURE(to_string(kind));
      const SiteLattice l = generate_sites(kind, dep.d_max, 3);
      const RfpField f = compute_field(l, dep, 5.0, default_region(kind, dep.d_max));
      const UpperBoundReport report = verify_upper_bound(f, dep, Layout::of(kind));
      CHECK(report.checked > 0);
      CHECK(report.n_neighbors == layout_neighbor_count(kind));
      CHECK(report.violations.empty());
    }
  }
}

TEST_CASE("upper bound report details") {
  const Layout hex = Layout::of(LayoutKind::Hexagonal);
  const Region region = default_region(LayoutKind::Hexagonal, kDep.d_max);
  const RfpField f = compute_field(generate_sites(LayoutKind::Hexagonal, kDep.d_max, 2), kDep,
                                   10.0, region);

  SUBCASE("only central pixels within zeta * d_max are checked") {
    std::size_t eligible = 0;
    std::size_t central = 0;
    for (const Pixel& p : f.pixels) {
      if (p.excluded || p.serving_site != 0) continue;
      ++central;
      if (p.serving_distance <= hex.zeta() * kDep.d_max) ++eligible;
    }
    const UpperBoundReport report = verify_upper_bound(f, kDep, hex);
    CHECK(report.checked == eligible);
    CHECK(report.checked < central);
  }
  SUBCASE("charging no neighbors fails everywhere") {
    const UpperBoundReport report = verify_upper_bound(f, kDep, hex, 0);
    CHECK(report.n_neighbors == 0);
    CHECK(report.checked > 0);
    CHECK(report.violations.size() == report.checked);
    for (const BoundViolation& v : report.violations) CHECK(v.rfp_total > v.bound);
  }
  SUBCASE("mismatched inputs are rejected") {
    CHECK_THROWS_AS(verify_upper_bound(f, kDep, Layout::of(LayoutKind::Square)), Error);
    Deployment other = kDep;
    other.d_max = 250.0;
    CHECK_THROWS_AS(verify_upper_bound(f, other, hex), Error);
  }
}

TEST_CASE("empirical alpha") {
  SUBCASE("1 m grid reproduces the closed forms") {
    const double tol[3] = {0.005, 0.006, 0.006};
    for (std::size_t i = 0; i < kTessellatingLayouts.size(); ++i) {
      const LayoutKind kind = kTessellatingLayouts[i];
      CAPTURE(to_string(kind));
      const SiteLattice l = generate_sites(kind, 500.0, 1);
      CHECK(std::abs(empirical_alpha(l, 1.0) - layout_alpha(kind)) <= tol[i]);
    }
  }
  SUBCASE("highway error halves with the resolution") {
    const SiteLattice l = generate_sites(LayoutKind::Highway, 500.0, 1);
    double previous = std::abs(empirical_alpha(l, 5.0) - 0.5);
    for (double res : {2.5, 1.25, 0.625}) {
      const double err = std::abs(empirical_alpha(l, res) - 0.5);
      CHECK(previous / err == doctest::Approx(2.0).epsilon(0.1));
      previous = err;
    }
  }
  SUBCASE("2-D error stays within one pixel of d_max") {
    // Rows alias against the cell edges, so the 2-D error is bounded but not monotone.
    for (LayoutKind kind : {LayoutKind::Square, LayoutKind::Hexagonal}) {
      const SiteLattice l = generate_sites(kind, 500.0, 1);
      for (double res : {5.0, 2.5, 1.25, 0.625}) {
        CHECK(std::abs(empirical_alpha(l, res) - layout_alpha(kind)) <= res / 500.0);
      }
    }
  }
  SUBCASE("finer grids land closer") {
    for (LayoutKind kind : kTessellatingLayouts) {
      const SiteLattice l = generate_sites(kind, 500.0, 1);
      const double coarse = std::abs(empirical_alpha(l, 5.0) - layout_alpha(kind));
      const double fine = std::abs(empirical_alpha(l, 0.5) - layout_alpha(kind));
      CAPTURE(to_string(kind));
      CHECK(fine <= coarse + 1e-4);
      CHECK(fine <= 1e-3);
    }
  }
  SUBCASE("parallel matches serial and the field statistic") {
    for (LayoutKind kind : kTessellatingLayouts) {
      const SiteLattice l = generate_sites(kind, 400.0, 1);
      const double a = empirical_alpha(l, 2.0);
      CHECK(same_bits(a, empirical_alpha_serial(l, 2.0)));
      const RfpField g = compute_field(l, Deployment{400.0, 1.0, 3.0, 700.0, 2.0, 1.0}, 2.0,
                                       default_region(kind, 400.0));
      CHECK(empirical_alpha(g) == doctest::Approx(a).epsilon(1e-3));
    }
  }
  SUBCASE("resolution limit") {
    const SiteLattice l = generate_sites(LayoutKind::Square, 500.0, 1);
    CHECK_THROWS_AS(empirical_alpha(l, 6.0), Error);
  }
}

TEST_CASE("CSV export") {
  const SiteLattice lone = single_site(LayoutKind::Square, 100.0);
  SUBCASE("empty field is header only") {
    const RfpField f = compute_field(lone, kDep, 1.0, Region{});
    CHECK(export_field_csv(f) ==
          "x_m,y_m,serving_site,distance_m,rfp_serving,rfp_total,excluded\n");
  }
  SUBCASE("rows follow storage order and round-trip at 9 digits") {
    const RfpField f = compute_field(generate_sites(LayoutKind::Square, 100.0, 1), kDep, 7.0,
                                     Region{-7.0, 7.0, -7.0, 7.0});
    REQUIRE(f.pixels.size() == 4);
    std::istringstream in(export_field_csv(f));
    std::string line;
    std::getline(in, line);
    CHECK(line == "x_m,y_m,serving_site,distance_m,rfp_serving,rfp_total,excluded");
    std::size_t row = 0;
    while (std::getline(in, line)) {
      REQUIRE(row < f.pixels.size());
      const Pixel& p = f.pixels[row++];
      const auto cells = split(line);
      REQUIRE(cells.size() == 7);
      CHECK(std::stod(cells[0]) == p.x);
      CHECK(std::stod(cells[1]) == p.y);
      CHECK(std::stoi(cells[2]) == p.serving_site);
      CHECK(std::stod(cells[3]) == doctest::Approx(p.serving_distance).epsilon(1e-8));
      CHECK(cells[6] == (p.excluded ? "1" : "0"));
      if (p.excluded) {
        CHECK(cells[4].empty());
        CHECK(cells[5].empty());
      } else {
        CHECK(std::stod(cells[4]) == doctest::Approx(p.rfp_serving).epsilon(1e-8));
        CHECK(std::stod(cells[5]) == doctest::Approx(p.rfp_total).epsilon(1e-8));
      }
    }
    CHECK(row == 4);
  }
  SUBCASE("excluded pixels leave the power columns empty") {
    const RfpField f = compute_field(lone, kDep, 5.0, pixel_at(0.0, 0.0, 5.0));
    CHECK(export_field_csv(f).find("0,0,0,0,,,1\n") != std::string::npos);
  }
}
