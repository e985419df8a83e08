#ifndef RFP_GRIDSIM_HPP
#define RFP_GRIDSIM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rfp/geometry.hpp"
#include "rfp/propagation.hpp"

namespace rfp {

/// Base-station positions of a regular layout, in meters, central site
/// first (index 0), then ring by ring in counter-clockwise order from the
/// +x axis. Sites are spaced 2 * zeta * d_max along lattice directions.
///
/// Hexagonal sites form the triangular lattice dual to flat-topped cells,
/// so first-ring sites sit at 30, 90, ..., 330 degrees. Square ring 1
/// counts the 4 edge and 4 diagonal neighbors. Highway sites lie on the
/// x axis.
struct SiteLattice {
  LayoutKind kind = LayoutKind::Hexagonal;
  double d_max = 0.0;
  int rings = 0;
  std::vector<Point2> sites;
  std::vector<int> site_ring;  ///< ring index of each site (0 = central)

  std::size_t first_ring_count() const;
};

inline constexpr int kMaxRings = 10;

/// Throws NoTessellation for Circle, InvalidArgument for d_max <= 0 or
/// rings outside [1, 10].
SiteLattice generate_sites(LayoutKind kind, double d_max, int rings);

/// A lattice with only the central site.
SiteLattice single_site(LayoutKind kind, double d_max);

/// Axis-aligned rectangle in meters. Pixel centers are the multiples of the
/// resolution k * res with x_min <= k * res < x_max (same for y), so an
/// empty or degenerate rectangle yields no pixels.
struct Region {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

/// Bounding box of the central cell grown by 10%.
Region default_region(LayoutKind kind, double d_max);

struct Pixel {
  double x = 0.0;
  double y = 0.0;
  int serving_site = -1;
  double serving_distance = 0.0;
  double rfp_serving = 0.0;  ///< NaN when excluded
  double rfp_total = 0.0;    ///< NaN when excluded
  bool excluded = false;
};

/// Per-pixel received power over a rectangle. Pixels are stored row-major,
/// rows by ascending y and x ascending within a row. Highway fields hold a
/// single row on the line of sites (y = 0) whatever the region's y range.
struct RfpField {
  LayoutKind kind = LayoutKind::Hexagonal;
  double d_max = 0.0;
  double resolution = 0.0;
  Region region;
  std::size_t first_ring_sites = 0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<Pixel> pixels;

  std::size_t excluded_count() const;
};

/// Exact multi-site received power at every pixel center: nearest site
/// serves (ties go to the lower site index), every site contributes to the
/// total. Pixels within half a resolution of any site are excluded.
/// Rows are computed in parallel; the output is bit-identical to
/// compute_field_serial.
RfpField compute_field(const SiteLattice& lattice, const Deployment& dep,
                       double resolution, const Region& region);

RfpField compute_field_serial(const SiteLattice& lattice, const Deployment& dep,
                              double resolution, const Region& region);

struct BoundViolation {
  std::size_t pixel_index;
  double serving_distance;
  double rfp_total;
  double bound;
};

struct UpperBoundReport {
  std::size_t checked = 0;
  int n_neighbors = 0;
  std::vector<BoundViolation> violations;
};

inline constexpr double kUpperBoundSlack = 1e-9;

/// Checks rfp_total <= rfp_upper_bound (with relative slack 1e-9) on every
/// non-excluded pixel of the central cell whose serving distance is within
/// zeta * d_max. N^I defaults to the lattice's first-ring size; pass
/// `n_neighbors` to override it. Meaningful for lattices with rings >= 2.
UpperBoundReport verify_upper_bound(const RfpField& field, const Deployment& dep,
                                    const Layout& layout,
                                    std::optional<int> n_neighbors = std::nullopt);

/// Mean serving distance over the central site's Voronoi cell, in units of
/// d_max, sampled on the default region at `resolution` (<= d_max / 100).
double empirical_alpha(const SiteLattice& lattice, double resolution);
double empirical_alpha_serial(const SiteLattice& lattice, double resolution);

/// Same statistic over an already computed field.
double empirical_alpha(const RfpField& field);

/// Largest relative growth of rfp_total over the central cell's non-excluded
/// pixels between `fewer_rings` and `field`, two fields on the same grid whose
/// lattices differ only in ring count. Measures how much the outermost ring
/// still contributes. InvalidArgument when the grids differ.
double ring_sensitivity(const RfpField& field, const RfpField& fewer_rings);

/// CSV with header x_m,y_m,serving_site,distance_m,rfp_serving,rfp_total,excluded
/// in storage order, numbers at 9 significant digits, LF line endings.
/// Excluded pixels leave both power columns empty.
std::string export_field_csv(const RfpField& field);

}  // namespace rfp

#endif  // RFP_GRIDSIM_HPP
