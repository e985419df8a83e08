#include "rfp/comparison.hpp"

#include <cmath>
#include <string>

#include "rfp/error.hpp"

namespace rfp {

void require_valid(const DeploymentPair& pair) {
  require_valid(pair.dep1, "deployment1");
  require_valid(pair.dep2, "deployment2");
  if (!(pair.beta1 > 0.0) || pair.beta1 > 1.0 + kBetaSlack) {
    throw Error(ErrorCode::BetaOutOfRange,
                "beta1 must lie in (0, 1], got " + std::to_string(pair.beta1),
                "beta1");
  }
  const double beta2 = pair.beta2();
  if (beta2 > 1.0 + kBetaSlack) {
    throw Error(ErrorCode::BetaOutOfRange,
                "beta2 = beta1 * delta(d_max) = " + std::to_string(beta2) +
                    " exceeds 1: the fixed point lies outside deployment (2)'s "
                    "cell",
                "beta1");
  }
}

namespace {

void require_same_eta(const DeploymentPair& pair) {
  if (pair.dep1.eta != pair.dep2.eta) {
    throw Error(ErrorCode::UnsupportedParameterChange,
                "both deployments must share the frequency exponent eta");
  }
}

// The shared-layout bracket alpha^-g + N zeta^-g (or beta^-g + ...).
double bracket(double base, double gamma, int n, double zeta) {
  double out = std::pow(base, -gamma);
  if (n > 0) out += n * std::pow(zeta, -gamma);
  return out;
}

}  // namespace

double delta_emitted(const DeploymentPair& pair) {
  require_valid(pair.dep1, "deployment1");
  require_valid(pair.dep2, "deployment2");
  require_same_eta(pair);
  const Deployment& a = pair.dep1;
  const Deployment& b = pair.dep2;
  return std::pow(pair.delta_d_max(), a.gamma) *
         std::pow(b.d_max, a.gamma - b.gamma) * (a.p_r_th / b.p_r_th) *
         std::pow(a.f / b.f, a.eta) * (a.c / b.c);
}

double delta_avg(const DeploymentPair& pair) {
  require_valid(pair.dep1, "deployment1");
  require_valid(pair.dep2, "deployment2");
  const int n = neighbor_count(pair.layout, pair.mode);
  const double zeta = n > 0 ? pair.layout.zeta() : 0.0;
  const double alpha = pair.layout.alpha();
  return (pair.dep1.p_r_th / pair.dep2.p_r_th) *
         bracket(alpha, pair.dep1.gamma, n, zeta) /
         bracket(alpha, pair.dep2.gamma, n, zeta);
}

double delta_fixed(const DeploymentPair& pair) {
  require_valid(pair);
  const int n = neighbor_count(pair.layout, pair.mode);
  const double zeta = n > 0 ? pair.layout.zeta() : 0.0;
  const double g1 = pair.dep1.gamma;
  const double g2 = pair.dep2.gamma;
  double denominator =
      std::pow(pair.beta1, -g2) * std::pow(pair.delta_d_max(), -g2);
  if (n > 0) denominator += n * std::pow(zeta, -g2);
  return (pair.dep1.p_r_th / pair.dep2.p_r_th) *
         bracket(pair.beta1, g1, n, zeta) / denominator;
}

ComparisonResult compare(const DeploymentPair& pair, std::string scenario_id) {
  ComparisonResult r;
  r.delta_pe = delta_emitted(pair);
  r.delta_pr_avg = delta_avg(pair);
  r.delta_pr_fx = delta_fixed(pair);
  r.scenario = std::move(scenario_id);
  r.layout = pair.layout.kind();
  r.mode = pair.mode;
  return r;
}

std::string_view to_string(ScenarioId id) noexcept {
  switch (id) {
    case ScenarioId::S1: return "S1";
    case ScenarioId::S2: return "S2";
    case ScenarioId::S3: return "S3";
    case ScenarioId::S4: return "S4";
    case ScenarioId::S5: return "S5";
  }
  return "?";
}

std::optional<ScenarioId> parse_scenario_id(std::string_view name) noexcept {
  for (ScenarioId id : kAllScenarios) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::pair<Deployment, Deployment> scenario_deployments(ScenarioId id) {
  // {d_max, p_r_th, gamma, f, eta, c}
  switch (id) {
    case ScenarioId::S1:
      return {{500.0, 1.0, 3.0, 700.0, 2.0, 1.0},
              {250.0, 1.0, 3.0, 700.0, 2.0, 1.0}};
    case ScenarioId::S2:
      return {{500.0, 1.0, 3.0, 700.0, 2.0, 1.0},
              {100.0, 1.0, 2.1, 700.0, 2.0, 1.0}};
    case ScenarioId::S3:
      return {{500.0, 1.0, 3.0, 700.0, 2.0, 1.0},
              {250.0, 1.0, 3.0, 3700.0, 2.0, 1.0}};
    case ScenarioId::S4:
      return {{500.0, 1.0, 3.0, 700.0, 2.0, 1.0},
              {500.0, 2.0, 3.0, 3700.0, 2.0, 1.0}};
    case ScenarioId::S5:
      return {{500.0, 1.0, 3.0, 700.0, 2.0, 1.0},
              {50.0, 2.0, 2.1, 3700.0, 2.0, 1.0}};
  }
  throw Error(ErrorCode::UnknownScenario, "unknown scenario id");
}

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::PE: return "PE";
    case Metric::PR_AVG: return "PR_AVG";
    case Metric::PR_FX: return "PR_FX";
  }
  return "?";
}

namespace {

double closed_form_pe(ScenarioId id, const DeploymentPair& p) {
  const double dd = p.delta_d_max();
  const double g1 = p.dep1.gamma;
  const double g2 = p.dep2.gamma;
  const double dp = p.dep1.p_r_th / p.dep2.p_r_th;
  const double df_eta = std::pow(p.dep1.f / p.dep2.f, p.dep1.eta);
  switch (id) {
    case ScenarioId::S1: return std::pow(dd, g1);
    case ScenarioId::S2:
      return std::pow(dd, g1) * std::pow(p.dep2.d_max, g1 - g2);
    case ScenarioId::S3: return std::pow(dd, g1) * df_eta;
    case ScenarioId::S4: return dp * df_eta;
    case ScenarioId::S5:
      return dp * std::pow(dd, g1) * std::pow(p.dep2.d_max, g1 - g2) * df_eta;
  }
  return 0.0;
}

double closed_form_avg(ScenarioId id, const DeploymentPair& p, int n) {
  const double g1 = p.dep1.gamma;
  const double g2 = p.dep2.gamma;
  const double dp = p.dep1.p_r_th / p.dep2.p_r_th;
  const double alpha = p.layout.alpha();
  // Scenarios with a path-loss exponent change keep an alpha dependence.
  auto gamma_change = [&] {
    if (n == 0) return std::pow(alpha, g2 - g1);
    const double zeta = p.layout.zeta();
    return (std::pow(alpha, -g1) + n * std::pow(zeta, -g1)) /
           (std::pow(alpha, -g2) + n * std::pow(zeta, -g2));
  };
  switch (id) {
    case ScenarioId::S1:
    case ScenarioId::S3: return 1.0;
    case ScenarioId::S2: return gamma_change();
    case ScenarioId::S4: return dp;
    case ScenarioId::S5: return gamma_change() * dp;
  }
  return 0.0;
}

double closed_form_fx(ScenarioId id, const DeploymentPair& p, int n) {
  const double dd = p.delta_d_max();
  const double g1 = p.dep1.gamma;
  const double g2 = p.dep2.gamma;
  const double dp = p.dep1.p_r_th / p.dep2.p_r_th;
  const double b1 = p.beta1;
  auto same_distance = [&](double gamma_den) {
    const double zeta = p.layout.zeta();
    return (std::pow(b1, -g1) + n * std::pow(zeta, -g1)) /
           (std::pow(b1, -gamma_den) * std::pow(dd, -gamma_den) +
            n * std::pow(zeta, -gamma_den));
  };
  switch (id) {
    case ScenarioId::S1:
    case ScenarioId::S3:
      return n == 0 ? std::pow(dd, g1) : same_distance(g1);
    case ScenarioId::S2:
      return n == 0 ? std::pow(b1, g2 - g1) * std::pow(dd, g2)
                    : same_distance(g2);
    case ScenarioId::S4: return dp;
    case ScenarioId::S5:
      return n == 0 ? std::pow(b1, g2 - g1) * std::pow(dd, g2) * dp
                    : dp * same_distance(g2);
  }
  return 0.0;
}

}  // namespace

double closed_form_delta(ScenarioId id, Metric metric,
                         const DeploymentPair& pair) {
  const int n = neighbor_count(pair.layout, pair.mode);
  switch (metric) {
    case Metric::PE: return closed_form_pe(id, pair);
    case Metric::PR_AVG: return closed_form_avg(id, pair, n);
    case Metric::PR_FX: return closed_form_fx(id, pair, n);
  }
  return 0.0;
}

double closed_form_delta(ScenarioId id, Metric metric, const Layout& layout,
                         NeighborMode mode, double beta1) {
  auto [dep1, dep2] = scenario_deployments(id);
  const DeploymentPair pair{dep1, dep2, layout, beta1, mode};
  return closed_form_delta(id, metric, pair);
}

namespace {

double general_delta(Metric metric, const DeploymentPair& pair) {
  switch (metric) {
    case Metric::PE: return delta_emitted(pair);
    case Metric::PR_AVG: return delta_avg(pair);
    case Metric::PR_FX: return delta_fixed(pair);
  }
  return 0.0;
}

}  // namespace

std::vector<ClosedFormCheck> verify_closed_forms(
    const std::vector<Layout>& layouts, const std::vector<NeighborMode>& modes,
    const std::vector<double>& beta1_values) {
  std::vector<ClosedFormCheck> report;
  for (ScenarioId id : kAllScenarios) {
    auto [dep1, dep2] = scenario_deployments(id);
    for (Metric metric : kAllMetrics) {
      for (const Layout& layout : layouts) {
        for (NeighborMode mode : modes) {
          for (double beta1 : beta1_values) {
            ClosedFormCheck entry{id,  metric, layout.kind(), mode, beta1,
                                  0.0, 0.0,    0.0,           false, {}};
            const DeploymentPair pair{dep1, dep2, layout, beta1, mode};
            try {
              require_valid(pair);
              entry.closed_form = closed_form_delta(id, metric, pair);
              entry.general = general_delta(metric, pair);
              entry.relative_error =
                  std::abs(entry.closed_form - entry.general) /
                  std::abs(entry.general);
              entry.pass = entry.relative_error <= kClosedFormTolerance;
            } catch (const Error& e) {
              entry.note = std::string(to_string(e.code())) + ": " + e.what();
            }
            report.push_back(std::move(entry));
          }
        }
      }
    }
  }
  return report;
}

}  // namespace rfp
