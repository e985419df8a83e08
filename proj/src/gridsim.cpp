#include "rfp/gridsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <tuple>

#include "rfp/error.hpp"
#include "rfp/format.hpp"

namespace rfp {

std::size_t SiteLattice::first_ring_count() const {
  return static_cast<std::size_t>(
      std::count(site_ring.begin(), site_ring.end(), 1));
}

std::size_t RfpField::excluded_count() const {
  return static_cast<std::size_t>(std::count_if(
      pixels.begin(), pixels.end(), [](const Pixel& p) { return p.excluded; }));
}

namespace {

struct LatticeSite {
  int ring;
  double angle;
  Point2 pos;
};

double ccw_angle(Point2 p) {
  double a = std::atan2(p.y, p.x);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

void check_d_max(double d_max) {
  if (!(d_max > 0.0) || !std::isfinite(d_max)) {
    throw Error(ErrorCode::InvalidArgument, "d_max must be a finite value > 0");
  }
}

}  // namespace

SiteLattice generate_sites(LayoutKind kind, double d_max, int rings) {
  const double spacing = 2.0 * layout_zeta(kind) * d_max;  // NoTessellation
  check_d_max(d_max);
  if (rings < 1 || rings > kMaxRings) {
    throw Error(ErrorCode::InvalidArgument,
                "rings must lie in [1, 10], got " + std::to_string(rings));
  }
  std::vector<LatticeSite> sites;
  for (int i = -rings; i <= rings; ++i) {
    if (kind == LayoutKind::Highway) {
      sites.push_back({std::abs(i), 0.0, {i * spacing, 0.0}});
      continue;
    }
    for (int j = -rings; j <= rings; ++j) {
      int ring = 0;
      Point2 pos;
      if (kind == LayoutKind::Square) {
        ring = std::max(std::abs(i), std::abs(j));
        pos = {i * spacing, j * spacing};
      } else {
        // Basis (cos 30, sin 30) and (0, 1); hex distance in these axes.
        ring = (std::abs(i) + std::abs(j) + std::abs(i + j)) / 2;
        pos = {i * spacing * std::numbers::sqrt3 / 2.0,
               i * spacing / 2.0 + j * spacing};
      }
      if (ring > rings) continue;
      sites.push_back({ring, 0.0, pos});
    }
  }
  for (LatticeSite& s : sites) s.angle = s.ring == 0 ? 0.0 : ccw_angle(s.pos);
  std::sort(sites.begin(), sites.end(), [](const LatticeSite& a, const LatticeSite& b) {
    return std::tie(a.ring, a.angle) < std::tie(b.ring, b.angle);
  });

  SiteLattice lattice;
  lattice.kind = kind;
  lattice.d_max = d_max;
  lattice.rings = rings;
  for (const LatticeSite& s : sites) {
    lattice.sites.push_back(s.pos);
    lattice.site_ring.push_back(s.ring);
  }
  return lattice;
}

SiteLattice single_site(LayoutKind kind, double d_max) {
  check_d_max(d_max);
  SiteLattice lattice;
  lattice.kind = kind;
  lattice.d_max = d_max;
  lattice.rings = 0;
  lattice.sites = {{0.0, 0.0}};
  lattice.site_ring = {0};
  return lattice;
}

Region default_region(LayoutKind kind, double d_max) {
  double half_w = d_max;
  double half_h = d_max;
  switch (kind) {
    case LayoutKind::Highway: half_h = 0.0; break;
    case LayoutKind::Square: half_w = half_h = d_max / std::numbers::sqrt2; break;
    case LayoutKind::Hexagonal: half_h = d_max * std::numbers::sqrt3 / 2.0; break;
    case LayoutKind::Circle: break;
  }
  constexpr double grow = 1.1;
  return {-grow * half_w, grow * half_w, -grow * half_h, grow * half_h};
}

namespace {

struct Axis {
  std::int64_t first = 0;
  std::size_t count = 0;
};

Axis pixel_axis(double lo, double hi, double res) {
  if (!(hi > lo)) return {};
  const auto first = static_cast<std::int64_t>(std::ceil(lo / res));
  const auto end = static_cast<std::int64_t>(std::ceil(hi / res));
  return {first, static_cast<std::size_t>(std::max<std::int64_t>(0, end - first))};
}

struct Grid {
  Axis x;
  Axis y;
  double res;
  bool single_row;  // highway: one row on y = 0

  std::size_t ny() const { return single_row ? (x.count > 0 ? 1 : 0) : y.count; }
  double x_at(std::size_t i) const {
    return static_cast<double>(x.first + static_cast<std::int64_t>(i)) * res;
  }
  double y_at(std::size_t j) const {
    return single_row ? 0.0
                      : static_cast<double>(y.first + static_cast<std::int64_t>(j)) * res;
  }
};

Grid make_grid(LayoutKind kind, double res, const Region& region) {
  if (!(res > 0.0) || !std::isfinite(res)) {
    throw Error(ErrorCode::InvalidArgument, "resolution must be a finite value > 0");
  }
  Grid g{pixel_axis(region.x_min, region.x_max, res),
         pixel_axis(region.y_min, region.y_max, res), res,
         kind == LayoutKind::Highway};
  return g;
}

struct Nearest {
  int site;
  double distance;
};

Nearest nearest_site(const std::vector<Point2>& sites, Point2 p) {
  Nearest best{-1, std::numeric_limits<double>::infinity()};
  for (std::size_t s = 0; s < sites.size(); ++s) {
    const double d = std::hypot(p.x - sites[s].x, p.y - sites[s].y);
    if (d < best.distance) best = {static_cast<int>(s), d};
  }
  return best;
}

// Everything a pixel evaluation needs; identical for both drivers.
struct FieldKernel {
  const std::vector<Point2>& sites;
  double p_e;
  double gamma;
  double freq_loss;  // f^eta
  double c;
  double exclusion_radius;

  Pixel operator()(Point2 p) const {
    Pixel px;
    px.x = p.x;
    px.y = p.y;
    double total = 0.0;
    double serving_power = 0.0;
    px.serving_distance = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < sites.size(); ++s) {
      const double d = std::hypot(p.x - sites[s].x, p.y - sites[s].y);
      if (d < exclusion_radius) px.excluded = true;
      const double power = px.excluded ? 0.0 : p_e / (std::pow(d, gamma) * freq_loss * c);
      if (d < px.serving_distance) {
        px.serving_distance = d;
        px.serving_site = static_cast<int>(s);
        serving_power = power;
      }
      total += power;
    }
    if (px.excluded) {
      px.rfp_serving = px.rfp_total = std::numeric_limits<double>::quiet_NaN();
    } else {
      px.rfp_serving = serving_power;
      px.rfp_total = total;
    }
    return px;
  }
};

RfpField prepare_field(const SiteLattice& lattice, const Deployment& dep,
                       const Grid& grid, const Region& region) {
  require_valid(dep);
  if (lattice.sites.empty()) {
    throw Error(ErrorCode::InvalidArgument, "lattice has no sites");
  }
  RfpField field;
  field.kind = lattice.kind;
  field.d_max = lattice.d_max;
  field.resolution = grid.res;
  field.region = region;
  field.first_ring_sites = lattice.first_ring_count();
  field.nx = grid.x.count;
  field.ny = grid.ny();
  field.pixels.resize(field.nx * field.ny);
  return field;
}

FieldKernel make_kernel(const SiteLattice& lattice, const Deployment& dep,
                        double resolution) {
  return FieldKernel{lattice.sites, emitted_power(dep), dep.gamma,
                     std::pow(dep.f, dep.eta), dep.c, resolution / 2.0};
}

}  // namespace

RfpField compute_field(const SiteLattice& lattice, const Deployment& dep,
                       double resolution, const Region& region) {
  const Grid grid = make_grid(lattice.kind, resolution, region);
  RfpField field = prepare_field(lattice, dep, grid, region);
  const FieldKernel kernel = make_kernel(lattice, dep, resolution);
  const auto ny = static_cast<std::int64_t>(field.ny);
  const std::size_t nx = field.nx;
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < ny; ++j) {
    const auto row = static_cast<std::size_t>(j);
    for (std::size_t i = 0; i < nx; ++i) {
      field.pixels[row * nx + i] = kernel({grid.x_at(i), grid.y_at(row)});
    }
  }
  return field;
}

RfpField compute_field_serial(const SiteLattice& lattice, const Deployment& dep,
                              double resolution, const Region& region) {
  const Grid grid = make_grid(lattice.kind, resolution, region);
  RfpField field = prepare_field(lattice, dep, grid, region);
  const FieldKernel kernel = make_kernel(lattice, dep, resolution);
  for (std::size_t j = 0; j < field.ny; ++j) {
    for (std::size_t i = 0; i < field.nx; ++i) {
      field.pixels[j * field.nx + i] = kernel({grid.x_at(i), grid.y_at(j)});
    }
  }
  return field;
}

UpperBoundReport verify_upper_bound(const RfpField& field, const Deployment& dep,
                                    const Layout& layout,
                                    std::optional<int> n_neighbors) {
  if (layout.kind() != field.kind) {
    throw Error(ErrorCode::InvalidArgument,
                "layout does not match the field's lattice layout");
  }
  if (std::abs(dep.d_max - field.d_max) > 1e-12 * field.d_max) {
    throw Error(ErrorCode::InvalidArgument,
                "deployment d_max does not match the field's lattice");
  }
  UpperBoundReport report;
  report.n_neighbors =
      n_neighbors.value_or(static_cast<int>(field.first_ring_sites));
  const double edge = layout.zeta() * dep.d_max;
  for (std::size_t k = 0; k < field.pixels.size(); ++k) {
    const Pixel& p = field.pixels[k];
    if (p.excluded || p.serving_site != 0 || p.serving_distance > edge) continue;
    ++report.checked;
    const double bound =
        rfp_upper_bound(dep, p.serving_distance, layout, report.n_neighbors);
    if (p.rfp_total > bound * (1.0 + kUpperBoundSlack)) {
      report.violations.push_back({k, p.serving_distance, p.rfp_total, bound});
    }
  }
  return report;
}

namespace {

struct RowSum {
  double sum = 0.0;
  std::size_t count = 0;
};

RowSum central_row(const SiteLattice& lattice, const Grid& grid, std::size_t j) {
  RowSum acc;
  const double y = grid.y_at(j);
  for (std::size_t i = 0; i < grid.x.count; ++i) {
    const Nearest n = nearest_site(lattice.sites, {grid.x_at(i), y});
    if (n.site != 0) continue;
    acc.sum += n.distance;
    ++acc.count;
  }
  return acc;
}

Grid alpha_grid(const SiteLattice& lattice, double resolution) {
  if (lattice.sites.empty()) {
    throw Error(ErrorCode::InvalidArgument, "lattice has no sites");
  }
  if (!(resolution > 0.0) || resolution > lattice.d_max / 100.0) {
    throw Error(ErrorCode::InvalidArgument,
                "empirical alpha needs 0 < resolution <= d_max / 100");
  }
  return make_grid(lattice.kind, resolution,
                   default_region(lattice.kind, lattice.d_max));
}

double finish_alpha(const std::vector<RowSum>& rows, double d_max) {
  RowSum total;
  for (const RowSum& r : rows) {
    total.sum += r.sum;
    total.count += r.count;
  }
  return total.count == 0 ? 0.0
                          : total.sum / static_cast<double>(total.count) / d_max;
}

}  // namespace

double empirical_alpha(const SiteLattice& lattice, double resolution) {
  const Grid grid = alpha_grid(lattice, resolution);
  std::vector<RowSum> rows(grid.ny());
  const auto ny = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < ny; ++j) {
    rows[static_cast<std::size_t>(j)] =
        central_row(lattice, grid, static_cast<std::size_t>(j));
  }
  return finish_alpha(rows, lattice.d_max);
}

double empirical_alpha_serial(const SiteLattice& lattice, double resolution) {
  const Grid grid = alpha_grid(lattice, resolution);
  std::vector<RowSum> rows(grid.ny());
  for (std::size_t j = 0; j < rows.size(); ++j) rows[j] = central_row(lattice, grid, j);
  return finish_alpha(rows, lattice.d_max);
}

double empirical_alpha(const RfpField& field) {
  RowSum total;
  for (const Pixel& p : field.pixels) {
    if (p.serving_site != 0) continue;
    total.sum += p.serving_distance;
    ++total.count;
  }
  return total.count == 0
             ? 0.0
             : total.sum / static_cast<double>(total.count) / field.d_max;
}

double ring_sensitivity(const RfpField& field, const RfpField& fewer_rings) {
  if (field.kind != fewer_rings.kind || field.d_max != fewer_rings.d_max ||
      field.resolution != fewer_rings.resolution || field.nx != fewer_rings.nx ||
      field.ny != fewer_rings.ny) {
    throw Error(ErrorCode::InvalidArgument, "ring sensitivity needs two fields on the same grid");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < field.pixels.size(); ++i) {
    const Pixel& p = field.pixels[i];
    const Pixel& q = fewer_rings.pixels[i];
    if (p.serving_site != 0 || p.excluded || q.excluded) continue;
    worst = std::max(worst, (p.rfp_total - q.rfp_total) / p.rfp_total);
  }
  return worst;
}

std::string export_field_csv(const RfpField& field) {
  std::string out = "x_m,y_m,serving_site,distance_m,rfp_serving,rfp_total,excluded\n";
  out.reserve(out.size() + field.pixels.size() * 80);
  for (const Pixel& p : field.pixels) {
    out += format_sig(p.x, 9);
    out += ',';
    out += format_sig(p.y, 9);
    out += ',';
    out += std::to_string(p.serving_site);
    out += ',';
    out += format_sig(p.serving_distance, 9);
    out += ',';
    if (!p.excluded) out += format_sig(p.rfp_serving, 9);
    out += ',';
    if (!p.excluded) out += format_sig(p.rfp_total, 9);
    out += ',';
    out += p.excluded ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace rfp
