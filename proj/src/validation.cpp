#include "rfp/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rfp/comparison.hpp"
#include "rfp/error.hpp"
#include "rfp/format.hpp"
#include "rfp/gridsim.hpp"
#include "rfp/propagation.hpp"
#include "rfp/scenarios.hpp"

namespace rfp {

namespace {

// Reported four-decimal values of the alpha table.
constexpr double kReportedAlpha[] = {0.5, 0.5411, 0.6080, 0.6667};
constexpr double kMonteCarloTolerance = 1e-3;

std::string kind_name(LayoutKind k) { return std::string(to_string(k)); }

void closed_form_checks(std::vector<CheckResult>& out) {
  std::vector<Layout> layouts;
  for (LayoutKind k : kTessellatingLayouts) layouts.push_back(Layout::of(k));
  const auto report = verify_closed_forms(
      layouts, {NeighborMode::None, NeighborMode::Adjacent}, {kDefaultBeta1});
  for (ScenarioId id : kAllScenarios) {
    std::size_t passed = 0;
    std::size_t total = 0;
    double worst = 0.0;
    for (const ClosedFormCheck& c : report) {
      if (c.scenario != id) continue;
      ++total;
      if (c.pass) ++passed;
      worst = std::max(worst, c.note.empty() ? c.relative_error : INFINITY);
    }
    out.push_back({"closed_form", "closed_form.table." + std::string(to_string(id)),
                   passed == total,
                   std::to_string(passed) + "/" + std::to_string(total) +
                       " cells, max rel err " + format_sig(worst, 3)});
  }
}

void geometry_checks(std::vector<CheckResult>& out, const ValidationOptions& opt) {
  for (LayoutKind k : kAllLayouts) {
    const double table = opt.alpha(k);
    const double reported = kReportedAlpha[static_cast<int>(k)];
    out.push_back({"geometry", "geometry.alpha_table." + kind_name(k),
                   std::abs(table - reported) <= 5e-5,
                   "alpha " + format_sig(table, 6) + " vs reported " +
                       format_sig(reported, 4)});
  }
  for (LayoutKind k : kAllLayouts) {
    const AlphaEstimate mc =
        estimate_alpha_monte_carlo(k, opt.monte_carlo_samples, opt.seed);
    const double diff = std::abs(mc.estimate - opt.alpha(k));
    out.push_back({"geometry", "geometry.monte_carlo_alpha." + kind_name(k),
                   diff <= kMonteCarloTolerance,
                   "estimate " + format_sig(mc.estimate, 6) + " +/- " +
                       format_sig(mc.standard_error, 2) + ", |diff| " +
                       format_sig(diff, 2)});
  }
  bool below = true;
  for (LayoutKind k : kTessellatingLayouts) below = below && opt.alpha(k) < layout_zeta(k);
  out.push_back({"geometry", "geometry.alpha_below_zeta", below, ""});
  const bool ordered = opt.alpha(LayoutKind::Highway) < opt.alpha(LayoutKind::Square) &&
                       opt.alpha(LayoutKind::Square) < opt.alpha(LayoutKind::Hexagonal) &&
                       opt.alpha(LayoutKind::Hexagonal) < opt.alpha(LayoutKind::Circle);
  out.push_back({"geometry", "geometry.alpha_ordering", ordered,
                 "highway < square < hexagonal < circle"});
}

Deployment random_deployment(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d_max(10.0, 2000.0);
  std::uniform_real_distribution<double> p(0.1, 10.0);
  std::uniform_real_distribution<double> gamma(1.5, 6.5);
  std::uniform_real_distribution<double> f(400.0, 6000.0);
  std::uniform_real_distribution<double> c(0.5, 4.0);
  Deployment dep;
  dep.d_max = d_max(rng);
  dep.p_r_th = p(rng);
  dep.gamma = gamma(rng);
  dep.f = f(rng);
  dep.eta = 2.0;
  dep.c = c(rng);
  return dep;
}

void propagation_checks(std::vector<CheckResult>& out, const ValidationOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Deployment dep = random_deployment(rng);
    const double pr = received_power(emitted_power(dep), dep.d_max, dep.gamma,
                                     dep.f, dep.eta, dep.c);
    worst = std::max(worst, std::abs(pr - dep.p_r_th) / dep.p_r_th);
  }
  out.push_back({"propagation", "propagation.edge_closure", worst <= 1e-12,
                 "100 deployments, max rel err " + format_sig(worst, 3)});

  // Pixels inside zeta * d_max with neighbors at or beyond zeta * d_max.
  std::size_t violations = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Deployment dep = random_deployment(rng);
    const Layout layout = Layout::of(kTessellatingLayouts[i % 3]);
    const double edge = layout.zeta() * dep.d_max;
    const double serving = edge * (0.01 + 0.99 * unit(rng));
    std::vector<double> neighbors(static_cast<std::size_t>(layout.n_neighbors()));
    for (double& d : neighbors) d = edge * (1.0 + 3.0 * unit(rng));
    const double exact = rfp_at_pixel(emitted_power(dep), serving, neighbors,
                                      dep.gamma, dep.f, dep.eta, dep.c);
    const double bound =
        rfp_upper_bound(dep, serving, layout, layout.n_neighbors());
    if (exact > bound * (1.0 + 1e-12)) ++violations;
  }
  out.push_back({"propagation", "propagation.upper_bound_direction", violations == 0,
                 std::to_string(violations) + " violations in 200 pixels"});
}

void gridsim_checks(std::vector<CheckResult>& out) {
  const Deployment dep = scenario_deployments(ScenarioId::S1).first;
  const Layout hex = Layout::of(LayoutKind::Hexagonal);
  const SiteLattice lattice = generate_sites(LayoutKind::Hexagonal, dep.d_max, 2);
  const RfpField field = compute_field(lattice, dep, 10.0,
                                       default_region(LayoutKind::Hexagonal, dep.d_max));
  const UpperBoundReport ub = verify_upper_bound(field, dep, hex);
  out.push_back({"gridsim", "gridsim.upper_bound.hexagonal",
                 ub.checked > 0 && ub.violations.empty(),
                 std::to_string(ub.violations.size()) + " violations over " +
                     std::to_string(ub.checked) + " pixels"});

  const RfpField probe = compute_field(lattice, dep, 5.0, {20.0, 30.0, -2.0, 2.0});
  double rel = INFINITY;
  for (const Pixel& p : probe.pixels) {
    if (p.x == 25.0 && p.y == 0.0) {
      rel = std::abs(p.rfp_serving / dep.p_r_th - 8000.0) / 8000.0;
    }
  }
  out.push_back({"gridsim", "gridsim.serving_power_at_25m", rel <= 1e-9,
                 "rel err " + format_sig(rel, 3)});
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  std::vector<CheckResult> out;
  closed_form_checks(out);
  geometry_checks(out, options);
  propagation_checks(out, options);
  gridsim_checks(out);
  return out;
}

}  // namespace rfp
