#ifndef RFP_PROPAGATION_HPP
#define RFP_PROPAGATION_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rfp/geometry.hpp"

namespace rfp {

// Canonical units: distances in meters, frequencies in MHz, c
// dimensionless. Absolute powers are "model units"; emitted power is
// unit-bearing (m^gamma * MHz^eta), every received power is in units of
// the minimum sensitivity.

/// Radio parameters of one deployment.
struct Deployment {
  double d_max = 0.0;  ///< maximum coverage distance [m]
  double p_r_th = 1.0; ///< minimum sensitivity [model units]
  double gamma = 3.0;  ///< distance path-loss exponent
  double f = 0.0;      ///< operating frequency [MHz]
  double eta = 2.0;    ///< frequency path-loss exponent
  double c = 1.0;      ///< baseline path loss

  friend bool operator==(const Deployment&, const Deployment&) = default;
};

inline constexpr double kGammaPlausibleMin = 1.5;
inline constexpr double kGammaPlausibleMax = 6.5;

/// A single finding from a validator. Non-fatal issues are warnings.
struct Issue {
  std::string code;  ///< machine-readable, e.g. "non_positive", "gamma_plausibility"
  std::string path;  ///< field path, e.g. "deployment1.gamma"
  std::string message;
  bool fatal = true;

  friend bool operator==(const Issue&, const Issue&) = default;
};

/// Field checks for one deployment. `prefix` is prepended to field paths
/// ("deployment1" gives "deployment1.d_max_m").
std::vector<Issue> validate_deployment(const Deployment& dep,
                                       std::string_view prefix = "deployment");

/// Throws ValidationError on the first fatal issue.
void require_valid(const Deployment& dep, std::string_view prefix = "deployment");

enum class NeighborMode { None, Adjacent };

std::string_view to_string(NeighborMode mode) noexcept;
std::optional<NeighborMode> parse_neighbor_mode(std::string_view name) noexcept;

/// N^I charged for `mode` under `layout`. Adjacent on a non-tessellating
/// layout throws NoTessellation.
int neighbor_count(const Layout& layout, NeighborMode mode);

/// p_e / (d^gamma * f^eta * c). Throws SingularDistance for d <= 0.
double received_power(double p_e, double d, double gamma, double f, double eta,
                      double c);

/// Power that puts exactly p_r_th at d_max: p_r_th * d_max^gamma * f^eta * c.
double emitted_power(const Deployment& dep);

/// Serving term plus every neighbor term at one pixel.
double rfp_at_pixel(double p_e, double serving_distance,
                    std::span<const double> neighbor_distances, double gamma,
                    double f, double eta, double c);

/// Serving term plus n_i neighbors charged at zeta * d_max. Valid only for
/// 0 < serving_distance <= zeta * d_max (BoundNotValid otherwise).
double rfp_upper_bound(const Deployment& dep, double serving_distance,
                       const Layout& layout, int n_i);

/// Received power at the average distance alpha * d_max, with neighbors per
/// `mode`: p_r_th * (alpha^-gamma + N * zeta^-gamma).
double rfp_avg(const Deployment& dep, const Layout& layout, NeighborMode mode);

/// Tolerance on the beta <= 1 limit, so grid points such as 0.1 * 10 that
/// land a rounding step above 1 are still accepted.
inline constexpr double kBetaSlack = 1e-12;

/// Received power at beta * d_max: p_r_th * (beta^-gamma + N * zeta^-gamma).
/// Throws BetaOutOfRange for beta <= 0 or beta > 1. When beta exceeds zeta
/// a warning is appended to `warnings` if given.
double rfp_fixed(const Deployment& dep, const Layout& layout, double beta,
                 NeighborMode mode, std::vector<Issue>* warnings = nullptr);

}  // namespace rfp

#endif  // RFP_PROPAGATION_HPP
