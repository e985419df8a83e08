#ifndef RFP_GEOMETRY_HPP
#define RFP_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace rfp {

/// Regular coverage layouts. Circle is a reference shape for the
/// average-distance coefficient only; it does not tile the plane.
enum class LayoutKind { Highway, Square, Hexagonal, Circle };

inline constexpr std::array<LayoutKind, 3> kTessellatingLayouts{
    LayoutKind::Highway, LayoutKind::Square, LayoutKind::Hexagonal};
inline constexpr std::array<LayoutKind, 4> kAllLayouts{
    LayoutKind::Highway, LayoutKind::Square, LayoutKind::Hexagonal,
    LayoutKind::Circle};

std::string_view to_string(LayoutKind kind) noexcept;
std::optional<LayoutKind> parse_layout_kind(std::string_view name) noexcept;

bool is_tessellating(LayoutKind kind) noexcept;

/// Mean distance from the site of a uniform point in the unit cell
/// (circumradius 1), evaluated from its closed form.
double layout_alpha(LayoutKind kind) noexcept;

/// Half the inter-site distance in units of d_MAX. Throws NoTessellation
/// for Circle.
double layout_zeta(LayoutKind kind);

/// Number of adjacent sites charged in the neighbor upper bound. Throws
/// NoTessellation for Circle.
int layout_neighbor_count(LayoutKind kind);

/// Geometry constants of one layout. Immutable.
class Layout {
 public:
  /// Constants from the fixed table above.
  static Layout of(LayoutKind kind);
  /// Arbitrary constants, for tests and what-if studies. zeta/neighbors are
  /// ignored for Circle.
  static Layout custom(LayoutKind kind, double alpha, double zeta,
                       int n_neighbors);

  LayoutKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  bool tessellating() const noexcept { return is_tessellating(kind_); }
  double zeta() const;
  int n_neighbors() const;

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  Layout(LayoutKind kind, double alpha, double zeta, int n)
      : kind_(kind), alpha_(alpha), zeta_(zeta), n_neighbors_(n) {}

  LayoutKind kind_;
  double alpha_;
  double zeta_;
  int n_neighbors_;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Membership in the unit cell (circumradius 1) centered at the origin.
///
/// Orientation: the square is axis-aligned (vertices on the diagonals); the
/// hexagon is flat-topped with a vertex at (1, 0). A highway cell is the
/// segment [-1, 1] on the x axis, so membership requires y == 0.
bool cell_contains(LayoutKind kind, Point2 p) noexcept;

struct AlphaEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Samples per independently seeded chunk of the Monte Carlo estimator.
inline constexpr std::uint64_t kMonteCarloChunk = 1u << 16;

/// Monte Carlo estimate of the mean site distance over the unit cell, by
/// rejection sampling from the cell's tight bounding box (uniform on [-1, 1]
/// for highway). Chunk k draws from its own engine seeded from (seed, k), so
/// the result is bit-identical for any thread count and matches
/// estimate_alpha_monte_carlo_serial. Requires n_samples >= 1000.
AlphaEstimate estimate_alpha_monte_carlo(LayoutKind kind,
                                         std::uint64_t n_samples,
                                         std::uint64_t seed);

/// Single-threaded reference for estimate_alpha_monte_carlo.
AlphaEstimate estimate_alpha_monte_carlo_serial(LayoutKind kind,
                                                std::uint64_t n_samples,
                                                std::uint64_t seed);

}  // namespace rfp

#endif  // RFP_GEOMETRY_HPP
