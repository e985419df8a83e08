#ifndef RFP_VALIDATION_HPP
#define RFP_VALIDATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rfp/geometry.hpp"

namespace rfp {

struct ValidationOptions {
  std::uint64_t seed = 1;
  std::uint64_t monte_carlo_samples = 2'000'000;
  /// The alpha table under test. Swapping it lets tests plant a corrupted
  /// constant and watch the Monte Carlo check catch it.
  std::function<double(LayoutKind)> alpha = layout_alpha;
};

struct CheckResult {
  std::string family;  ///< closed_form | geometry | propagation | gridsim
  std::string name;    ///< dotted, family first
  bool pass = false;
  std::string detail;
};

/// Internal-consistency suite: closed forms vs general ratios, alpha table vs
/// Monte Carlo, edge closure and bound direction on random deployments, and
/// a small lattice simulation. Output depends only on `options`.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

}  // namespace rfp

#endif  // RFP_VALIDATION_HPP
