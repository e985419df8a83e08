#ifndef RFP_SCENARIOS_HPP
#define RFP_SCENARIOS_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rfp/comparison.hpp"
#include "rfp/error.hpp"

namespace rfp {

inline constexpr double kDefaultBeta1 = 0.05;

/// A named deployment pair plus the layouts and neighbor modes to evaluate.
struct Scenario {
  std::string id;
  std::string description;
  Deployment dep1;
  Deployment dep2;
  double beta1 = kDefaultBeta1;
  std::vector<LayoutKind> layouts;
  std::vector<NeighborMode> modes;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario builtin_scenario(ScenarioId id);
/// Throws UnknownScenario for anything but S1..S5.
Scenario builtin_scenario(std::string_view id);

/// Binds a scenario to one layout and mode.
DeploymentPair make_pair(const Scenario& s, LayoutKind layout, NeighborMode mode);

/// Every violation of the scenario's invariants. Warnings (fatal == false)
/// do not make a scenario unusable.
std::vector<Issue> validate_scenario(const Scenario& s);

/// Strict JSON scenario document:
///
///   {"id": "S1", "description": "...", "beta1": 0.05,
///    "deployment1": {"d_max_m": 500, "p_r_th": 1, "gamma": 3,
///                    "f_mhz": 700, "eta": 2, "c": 1},
///    "deployment2": {...},
///    "layouts": ["highway", "square", "hexagonal"],
///    "modes": ["none", "adjacent"]}
///
/// `description`, `eta` and `c` are optional; anything else missing or any
/// unknown key is a SchemaError. Malformed JSON is a SyntaxError and an
/// invariant breach a ValidationError carrying the field path.
Scenario parse_scenario_file(std::string_view document);

/// Reads and parses a scenario file. Unreadable files are InvalidArgument.
Scenario load_scenario_file(const std::filesystem::path& path);

/// Inverse of parse_scenario_file (all fields written).
std::string scenario_to_json(const Scenario& s);

struct SweepPoint {
  double beta1;
  double delta_pr_fx;
};

/// Raised when a sweep grid point pushes beta2 past 1.
class SweepRangeError : public Error {
 public:
  SweepRangeError(const std::string& message, double beta1)
      : Error(ErrorCode::RangeError, message, "beta1"), beta1_(beta1) {}
  double beta1() const noexcept { return beta1_; }

 private:
  double beta1_;
};

/// delta_fixed over beta1 = start, start + step, ... up to end. The grid
/// never passes `end`; a last point within rounding of `end` snaps to it.
std::vector<SweepPoint> sweep_beta(const Scenario& s, LayoutKind layout,
                                   NeighborMode mode, double beta_start,
                                   double beta_end, double beta_step);

}  // namespace rfp

#endif  // RFP_SCENARIOS_HPP
