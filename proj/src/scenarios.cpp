#include "rfp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rfp {

using nlohmann::json;

Scenario builtin_scenario(ScenarioId id) {
  static constexpr std::string_view kDescriptions[] = {
      "Light densification",
      "Moderate densification",
      "Light densification, frequency change",
      "Same deployment, service & frequency change",
      "Strong densification, service & frequency change",
  };
  auto [dep1, dep2] = scenario_deployments(id);
  Scenario s;
  s.id = std::string(to_string(id));
  s.description = std::string(kDescriptions[static_cast<int>(id)]);
  s.dep1 = dep1;
  s.dep2 = dep2;
  s.beta1 = kDefaultBeta1;
  s.layouts.assign(kTessellatingLayouts.begin(), kTessellatingLayouts.end());
  s.modes = {NeighborMode::None, NeighborMode::Adjacent};
  return s;
}

Scenario builtin_scenario(std::string_view id) {
  const auto parsed = parse_scenario_id(id);
  if (!parsed) {
    throw Error(ErrorCode::UnknownScenario,
                "unknown built-in scenario '" + std::string(id) +
                    "' (expected S1..S5)");
  }
  return builtin_scenario(*parsed);
}

DeploymentPair make_pair(const Scenario& s, LayoutKind layout,
                         NeighborMode mode) {
  return DeploymentPair{s.dep1, s.dep2, Layout::of(layout), s.beta1, mode};
}

std::vector<Issue> validate_scenario(const Scenario& s) {
  std::vector<Issue> out;
  if (s.id.empty()) out.push_back({"empty_id", "id", "id must not be empty", true});
  for (auto& issue : validate_deployment(s.dep1, "deployment1")) out.push_back(issue);
  for (auto& issue : validate_deployment(s.dep2, "deployment2")) out.push_back(issue);
  if (s.dep1.eta != s.dep2.eta) {
    out.push_back({"unsupported_parameter_change", "deployment2.eta",
                   "both deployments must share eta", true});
  }
  if (!(s.beta1 > 0.0 && s.beta1 < 1.0)) {
    out.push_back({"beta1_range", "beta1",
                   "beta1 must lie in (0, 1), got " + std::to_string(s.beta1),
                   true});
  } else if (s.dep1.d_max > 0.0 && s.dep2.d_max > 0.0) {
    const double beta2 = s.beta1 * s.dep1.d_max / s.dep2.d_max;
    if (beta2 > 1.0 + kBetaSlack) {
      out.push_back({"beta2_overflow", "beta1",
                     "beta2 = beta1 * d_max(1) / d_max(2) = " +
                         std::to_string(beta2) + " exceeds 1",
                     true});
    }
  }
  const bool adjacent =
      std::find(s.modes.begin(), s.modes.end(), NeighborMode::Adjacent) !=
      s.modes.end();
  for (std::size_t i = 0; i < s.layouts.size(); ++i) {
    if (adjacent && !is_tessellating(s.layouts[i])) {
      out.push_back({"no_tessellation", "layouts[" + std::to_string(i) + "]",
                     std::string(to_string(s.layouts[i])) +
                         " does not tessellate, so adjacent neighbors are undefined",
                     true});
    }
  }
  return out;
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::SchemaError, path + ": " + msg, path);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key())) {
      const std::string where = path.empty() ? it.key() : path + "." + it.key();
      schema_error(where, "unknown field");
    }
  }
}

const json& require_key(const json& obj, const std::string& path,
                        const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    schema_error(path.empty() ? key : path + "." + key, "missing field");
  }
  return *it;
}

double number_at(const json& value, const std::string& path) {
  if (!value.is_number()) schema_error(path, "expected a number");
  return value.get<double>();
}

std::string string_at(const json& value, const std::string& path) {
  if (!value.is_string()) schema_error(path, "expected a string");
  return value.get<std::string>();
}

Deployment parse_deployment(const json& obj, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  reject_unknown_keys(obj, path,
                      {"d_max_m", "p_r_th", "gamma", "f_mhz", "eta", "c"});
  Deployment d;
  d.d_max = number_at(require_key(obj, path, "d_max_m"), path + ".d_max_m");
  d.p_r_th = number_at(require_key(obj, path, "p_r_th"), path + ".p_r_th");
  d.gamma = number_at(require_key(obj, path, "gamma"), path + ".gamma");
  d.f = number_at(require_key(obj, path, "f_mhz"), path + ".f_mhz");
  if (obj.contains("eta")) d.eta = number_at(obj.at("eta"), path + ".eta");
  if (obj.contains("c")) d.c = number_at(obj.at("c"), path + ".c");
  return d;
}

template <typename T, typename Parse>
std::vector<T> parse_names(const json& arr, const std::string& path, Parse parse) {
  if (!arr.is_array()) schema_error(path, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = path + "[" + std::to_string(i) + "]";
    const auto value = parse(string_at(arr[i], where));
    if (!value) schema_error(where, "unrecognized value '" + arr[i].get<std::string>() + "'");
    out.push_back(*value);
  }
  return out;
}

json deployment_to_json(const Deployment& d) {
  return json{{"d_max_m", d.d_max}, {"p_r_th", d.p_r_th}, {"gamma", d.gamma},
              {"f_mhz", d.f},       {"eta", d.eta},       {"c", d.c}};
}

}  // namespace

Scenario parse_scenario_file(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, std::string("malformed scenario document: ") + e.what());
  }
  if (!doc.is_object()) schema_error("$", "scenario document must be a JSON object");
  reject_unknown_keys(doc, "", {"id", "description", "deployment1", "deployment2",
                                "beta1", "layouts", "modes"});
  Scenario s;
  s.id = string_at(require_key(doc, "", "id"), "id");
  if (doc.contains("description")) s.description = string_at(doc.at("description"), "description");
  s.dep1 = parse_deployment(require_key(doc, "", "deployment1"), "deployment1");
  s.dep2 = parse_deployment(require_key(doc, "", "deployment2"), "deployment2");
  s.beta1 = number_at(require_key(doc, "", "beta1"), "beta1");
  s.layouts = parse_names<LayoutKind>(require_key(doc, "", "layouts"), "layouts",
                                      parse_layout_kind);
  s.modes = parse_names<NeighborMode>(require_key(doc, "", "modes"), "modes",
                                      parse_neighbor_mode);
  for (const Issue& issue : validate_scenario(s)) {
    if (issue.fatal) throw Error(ErrorCode::ValidationError, issue.message, issue.path);
  }
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::InvalidArgument,
                "cannot read scenario file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_file(buffer.str());
}

std::string scenario_to_json(const Scenario& s) {
  json layouts = json::array();
  for (LayoutKind k : s.layouts) layouts.push_back(std::string(to_string(k)));
  json modes = json::array();
  for (NeighborMode m : s.modes) modes.push_back(std::string(to_string(m)));
  const json doc{{"id", s.id},
                 {"description", s.description},
                 {"deployment1", deployment_to_json(s.dep1)},
                 {"deployment2", deployment_to_json(s.dep2)},
                 {"beta1", s.beta1},
                 {"layouts", layouts},
                 {"modes", modes}};
  return doc.dump(2) + "\n";
}

std::vector<SweepPoint> sweep_beta(const Scenario& s, LayoutKind layout,
                                   NeighborMode mode, double beta_start,
                                   double beta_end, double beta_step) {
  if (!(beta_start > 0.0) || !(beta_end >= beta_start) || !(beta_step > 0.0) ||
      !std::isfinite(beta_end) || !std::isfinite(beta_step)) {
    throw Error(ErrorCode::RangeError,
                "sweep needs 0 < beta_start <= beta_end and beta_step > 0");
  }
  const auto n_points = static_cast<std::size_t>(
                            std::floor((beta_end - beta_start) / beta_step + 1e-9)) +
                        1;
  DeploymentPair pair = make_pair(s, layout, mode);
  std::vector<SweepPoint> series;
  series.reserve(n_points);
  for (std::size_t k = 0; k < n_points; ++k) {
    double beta1 = beta_start + static_cast<double>(k) * beta_step;
    if (k + 1 == n_points && std::abs(beta1 - beta_end) <= 1e-9 * beta_step) {
      beta1 = beta_end;
    }
    pair.beta1 = beta1;
    if (pair.beta2() > 1.0 + kBetaSlack) {
      throw SweepRangeError("beta1 = " + std::to_string(beta1) +
                                " puts beta2 = " + std::to_string(pair.beta2()) +
                                " beyond deployment (2)'s cell edge",
                            beta1);
    }
    series.push_back({beta1, delta_fixed(pair)});
  }
  return series;
}

}  // namespace rfp
