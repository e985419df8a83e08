#include "rfp/propagation.hpp"

#include <cmath>
#include <string>

#include "rfp/error.hpp"

namespace rfp {

namespace {

std::string join(std::string_view prefix, std::string_view field) {
  std::string out(prefix);
  if (!out.empty()) out += '.';
  out += field;
  return out;
}

void check_positive(std::vector<Issue>& out, std::string_view prefix,
                    std::string_view field, double value) {
  if (std::isfinite(value) && value > 0.0) return;
  const std::string path = join(prefix, field);
  out.push_back({"non_positive", path,
                 path + " must be a finite value > 0, got " + std::to_string(value),
                 true});
}

}  // namespace

std::vector<Issue> validate_deployment(const Deployment& dep,
                                       std::string_view prefix) {
  std::vector<Issue> out;
  check_positive(out, prefix, "d_max_m", dep.d_max);
  check_positive(out, prefix, "p_r_th", dep.p_r_th);
  check_positive(out, prefix, "gamma", dep.gamma);
  check_positive(out, prefix, "f_mhz", dep.f);
  if (!std::isfinite(dep.eta) || dep.eta < 0.0) {
    const std::string path = join(prefix, "eta");
    out.push_back({"negative", path,
                   path + " must be a finite value >= 0, got " +
                       std::to_string(dep.eta),
                   true});
  }
  check_positive(out, prefix, "c", dep.c);
  if (dep.gamma > 0.0 &&
      (dep.gamma < kGammaPlausibleMin || dep.gamma > kGammaPlausibleMax)) {
    const std::string path = join(prefix, "gamma");
    out.push_back({"gamma_plausibility", path,
                   path + " = " + std::to_string(dep.gamma) +
                       " is outside the plausible range [1.5, 6.5]",
                   false});
  }
  return out;
}

void require_valid(const Deployment& dep, std::string_view prefix) {
  for (const Issue& issue : validate_deployment(dep, prefix)) {
    if (issue.fatal) {
      throw Error(ErrorCode::ValidationError, issue.message, issue.path);
    }
  }
}

std::string_view to_string(NeighborMode mode) noexcept {
  return mode == NeighborMode::None ? "none" : "adjacent";
}

std::optional<NeighborMode> parse_neighbor_mode(std::string_view name) noexcept {
  if (name == "none") return NeighborMode::None;
  if (name == "adjacent") return NeighborMode::Adjacent;
  return std::nullopt;
}

int neighbor_count(const Layout& layout, NeighborMode mode) {
  return mode == NeighborMode::None ? 0 : layout.n_neighbors();
}

double received_power(double p_e, double d, double gamma, double f, double eta,
                      double c) {
  if (!(d > 0.0)) {
    throw Error(ErrorCode::SingularDistance,
                "received power is undefined at distance " + std::to_string(d));
  }
  return p_e / (std::pow(d, gamma) * std::pow(f, eta) * c);
}

double emitted_power(const Deployment& dep) {
  require_valid(dep);
  return dep.p_r_th * std::pow(dep.d_max, dep.gamma) * std::pow(dep.f, dep.eta) *
         dep.c;
}

double rfp_at_pixel(double p_e, double serving_distance,
                    std::span<const double> neighbor_distances, double gamma,
                    double f, double eta, double c) {
  double total = received_power(p_e, serving_distance, gamma, f, eta, c);
  for (double d : neighbor_distances) {
    total += received_power(p_e, d, gamma, f, eta, c);
  }
  return total;
}

double rfp_upper_bound(const Deployment& dep, double serving_distance,
                       const Layout& layout, int n_i) {
  const double edge = layout.zeta() * dep.d_max;
  if (!(serving_distance > 0.0) || serving_distance > edge) {
    throw Error(ErrorCode::BoundNotValid,
                "upper bound needs 0 < serving distance <= zeta * d_max = " +
                    std::to_string(edge) + ", got " +
                    std::to_string(serving_distance));
  }
  if (n_i < 0) {
    throw Error(ErrorCode::InvalidArgument, "neighbor count must be >= 0");
  }
  const double p_e = emitted_power(dep);
  const double serving =
      received_power(p_e, serving_distance, dep.gamma, dep.f, dep.eta, dep.c);
  const double neighbor =
      received_power(p_e, edge, dep.gamma, dep.f, dep.eta, dep.c);
  return serving + n_i * neighbor;
}

double rfp_avg(const Deployment& dep, const Layout& layout, NeighborMode mode) {
  require_valid(dep);
  const int n = neighbor_count(layout, mode);
  double bracket = std::pow(layout.alpha(), -dep.gamma);
  if (n > 0) bracket += n * std::pow(layout.zeta(), -dep.gamma);
  return dep.p_r_th * bracket;
}

double rfp_fixed(const Deployment& dep, const Layout& layout, double beta,
                 NeighborMode mode, std::vector<Issue>* warnings) {
  require_valid(dep);
  if (!(beta > 0.0) || beta > 1.0 + kBetaSlack) {
    throw Error(ErrorCode::BetaOutOfRange,
                "beta must lie in (0, 1], got " + std::to_string(beta));
  }
  if (warnings != nullptr && layout.tessellating() && beta > layout.zeta()) {
    warnings->push_back({"beta_beyond_zeta", "beta",
                         "beta = " + std::to_string(beta) +
                             " exceeds zeta; the fixed-distance model is "
                             "only meant for distances up to zeta * d_max",
                         false});
  }
  const int n = neighbor_count(layout, mode);
  double bracket = std::pow(beta, -dep.gamma);
  if (n > 0) bracket += n * std::pow(layout.zeta(), -dep.gamma);
  return dep.p_r_th * bracket;
}

}  // namespace rfp
