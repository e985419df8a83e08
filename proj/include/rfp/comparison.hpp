#ifndef RFP_COMPARISON_HPP
#define RFP_COMPARISON_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rfp/geometry.hpp"
#include "rfp/propagation.hpp"

namespace rfp {

// Ratios are deployment (1) over deployment (2): a value above 1 means
// deployment (2) yields the lower quantity.

/// Two deployments evaluated under one shared layout and neighbor mode.
/// The fixed evaluation point sits at beta1 * d_max(1) in deployment (1)
/// and at the same physical distance in deployment (2).
struct DeploymentPair {
  Deployment dep1;
  Deployment dep2;
  Layout layout = Layout::of(LayoutKind::Hexagonal);
  double beta1 = 0.05;
  NeighborMode mode = NeighborMode::None;

  double delta_d_max() const { return dep1.d_max / dep2.d_max; }
  /// beta1 * d_max(1) / d_max(2)
  double beta2() const { return beta1 * delta_d_max(); }
};

/// Checks both deployments, beta1 in (0, 1] and beta2 <= 1. Throws
/// ValidationError / BetaOutOfRange.
void require_valid(const DeploymentPair& pair);

struct ComparisonResult {
  double delta_pe = 0.0;
  double delta_pr_avg = 0.0;
  double delta_pr_fx = 0.0;
  std::string scenario;
  LayoutKind layout = LayoutKind::Hexagonal;
  NeighborMode mode = NeighborMode::None;
};

/// Emitted-power ratio in product form:
///   delta(d_max)^g1 * d_max(2)^(g1 - g2) * delta(p_r_th) * delta(f)^eta * delta(c).
/// d_max(2) enters with a dimensionful exponent, so meters are mandatory.
/// Different eta per deployment is rejected (UnsupportedParameterChange).
double delta_emitted(const DeploymentPair& pair);

/// Ratio of received power at the average distance of each deployment.
double delta_avg(const DeploymentPair& pair);

/// Ratio of received power at the same physical distance beta1 * d_max(1).
double delta_fixed(const DeploymentPair& pair);

ComparisonResult compare(const DeploymentPair& pair, std::string scenario_id);

enum class ScenarioId { S1, S2, S3, S4, S5 };
inline constexpr std::array<ScenarioId, 5> kAllScenarios{
    ScenarioId::S1, ScenarioId::S2, ScenarioId::S3, ScenarioId::S4,
    ScenarioId::S5};

std::string_view to_string(ScenarioId id) noexcept;
std::optional<ScenarioId> parse_scenario_id(std::string_view name) noexcept;

/// The two deployments of a built-in scenario. P^R_TH(1) is fixed at 1 model
/// unit; frequencies are the exact 700 / 3700 MHz values.
std::pair<Deployment, Deployment> scenario_deployments(ScenarioId id);

enum class Metric { PE, PR_AVG, PR_FX };
inline constexpr std::array<Metric, 3> kAllMetrics{Metric::PE, Metric::PR_AVG,
                                                   Metric::PR_FX};
std::string_view to_string(Metric metric) noexcept;

/// Scenario-specialized closed form of one ratio, evaluated on the
/// parameters in `pair`. Each scenario has its own reduced expression; the
/// N^I > 0 rows use the single shared neighbor count.
double closed_form_delta(ScenarioId id, Metric metric,
                         const DeploymentPair& pair);

/// Same, on the built-in parameters of scenario `id`.
double closed_form_delta(ScenarioId id, Metric metric, const Layout& layout,
                         NeighborMode mode, double beta1);

struct ClosedFormCheck {
  ScenarioId scenario;
  Metric metric;
  LayoutKind layout;
  NeighborMode mode;
  double beta1;
  double closed_form;
  double general;
  double relative_error;
  bool pass;
  std::string note;  ///< set when the general route threw
};

inline constexpr double kClosedFormTolerance = 1e-12;

/// Compares every scenario-specialized closed form with the general ratio
/// for each (scenario, metric, layout, mode, beta1). Entries come out
/// ordered by that key, with layouts, modes and betas in input order.
/// Combinations that cannot be evaluated become failing entries.
std::vector<ClosedFormCheck> verify_closed_forms(
    const std::vector<Layout>& layouts, const std::vector<NeighborMode>& modes,
    const std::vector<double>& beta1_values);

}  // namespace rfp

#endif  // RFP_COMPARISON_HPP
