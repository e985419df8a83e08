#include "rfp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "rfp/comparison.hpp"
#include "rfp/error.hpp"
#include "rfp/format.hpp"
#include "rfp/gridsim.hpp"
#include "rfp/scenarios.hpp"

namespace rfp::cli {

using nlohmann::json;

namespace {

constexpr int kTableDigits = 4;
constexpr int kFileDigits = 9;

// A rectangular report rendered as an aligned table or CSV.
using Cell = std::variant<std::string, double>;

struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c, int digits) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return format_sig(std::get<double>(c), digits);
}

std::string render_table(const Report& r) {
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], cell_text(row[i], kTableDigits).size());
    }
  }
  std::ostringstream os;
  auto line = [&](auto&& text_of) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      const std::string t = text_of(i);
      if (i > 0) os << "  ";
      os << std::string(width[i] - t.size(), ' ') << t;
    }
    os << '\n';
  };
  line([&](std::size_t i) { return r.columns[i]; });
  for (const auto& row : r.rows) {
    line([&](std::size_t i) { return cell_text(row[i], kTableDigits); });
  }
  return os.str();
}

std::string render_csv(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += r.columns[i];
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += cell_text(row[i], kFileDigits);
    }
    out += '\n';
  }
  return out;
}

double j9(double v) { return round_sig(v, kFileDigits); }

std::string render(const Report& r, OutputFormat format, const json& doc) {
  switch (format) {
    case OutputFormat::Table: return render_table(r);
    case OutputFormat::Csv: return render_csv(r);
    case OutputFormat::Json: return doc.dump(2) + "\n";
  }
  return {};
}

// Everything the subcommands share.
struct Request {
  std::string scenario = "S1";
  std::vector<std::string> layouts;
  bool all_layouts = false;
  std::string neighbors;
  std::optional<double> beta;
  double beta_start = 0.0;
  double beta_end = 0.0;
  double beta_step = 0.0;
  int rings = 2;
  double resolution = 5.0;
  int deployment = 1;
  std::string format = "table";
  std::string out_path;
  std::uint64_t seed = 1;
  bool db = false;
};

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  return OutputFormat::Table;
}

Scenario resolve_scenario(const Request& req) {
  Scenario s = parse_scenario_id(req.scenario) ? builtin_scenario(req.scenario)
                                               : load_scenario_file(req.scenario);
  if (req.beta) {
    s.beta1 = *req.beta;
    for (const Issue& issue : validate_scenario(s)) {
      if (issue.fatal) throw Error(ErrorCode::ValidationError, issue.message, issue.path);
    }
  }
  return s;
}

std::vector<LayoutKind> selected_layouts(const Request& req, const Scenario& s) {
  if (req.all_layouts) {
    return {kTessellatingLayouts.begin(), kTessellatingLayouts.end()};
  }
  if (req.layouts.empty()) return s.layouts;
  std::vector<LayoutKind> out;
  for (const std::string& name : req.layouts) out.push_back(*parse_layout_kind(name));
  return out;
}

std::vector<NeighborMode> selected_modes(const Request& req, const Scenario& s) {
  if (req.neighbors.empty()) return s.modes;
  return {req.neighbors == "on" ? NeighborMode::Adjacent : NeighborMode::None};
}

// Writes to --out when given, else to `out`.
int emit(const Request& req, const std::string& text, std::ostream& out,
         std::ostream& err) {
  if (req.out_path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(req.out_path, std::ios::binary);
  file << text;
  if (!file) {
    err << "error: cannot write '" << req.out_path << "'\n";
    return kExitFailure;
  }
  return kExitOk;
}

double rel_diff(double general, double closed) {
  return std::abs(general - closed) / std::abs(general);
}

int run_compare(const Request& req, std::ostream& out, std::ostream& err) {
  const Scenario s = resolve_scenario(req);
  const auto builtin = parse_scenario_id(s.id);
  Report r;
  r.columns = {"scenario", "layout", "mode", "beta1", "delta_pe", "delta_pr_avg",
               "delta_pr_fx"};
  if (req.db) {
    r.columns.insert(r.columns.end(), {"delta_pe_db", "delta_pr_avg_db", "delta_pr_fx_db"});
  }
  r.columns.insert(r.columns.end(), {"closed_form_pe", "closed_form_pr_avg",
                                     "closed_form_pr_fx", "relative_difference"});
  json doc = json::array();
  for (LayoutKind layout : selected_layouts(req, s)) {
    for (NeighborMode mode : selected_modes(req, s)) {
      // Scenario-default modes skip adjacent on a layout that cannot carry it.
      if (req.neighbors.empty() && mode == NeighborMode::Adjacent && !is_tessellating(layout)) {
        continue;
      }
      const DeploymentPair pair = make_pair(s, layout, mode);
      const ComparisonResult res = compare(pair, s.id);
      const double general[] = {res.delta_pe, res.delta_pr_avg, res.delta_pr_fx};

      std::vector<Cell> row{s.id, std::string(to_string(layout)),
                            std::string(to_string(mode)), s.beta1};
      for (double g : general) row.emplace_back(g);
      json obj{{"scenario", s.id},
               {"layout", to_string(layout)},
               {"mode", to_string(mode)},
               {"beta1", j9(s.beta1)},
               {"distance_unit", "m"},
               {"delta_pe", j9(res.delta_pe)},
               {"delta_pr_avg", j9(res.delta_pr_avg)},
               {"delta_pr_fx", j9(res.delta_pr_fx)}};
      if (req.db) {
        for (double g : general) row.emplace_back(to_db(g));
        obj["delta_pe_db"] = j9(to_db(res.delta_pe));
        obj["delta_pr_avg_db"] = j9(to_db(res.delta_pr_avg));
        obj["delta_pr_fx_db"] = j9(to_db(res.delta_pr_fx));
      }
      if (builtin) {
        double worst = 0.0;
        json closed = json::object();
        for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
          const double cf = closed_form_delta(*builtin, kAllMetrics[m], pair.layout,
                                              mode, s.beta1);
          worst = std::max(worst, rel_diff(general[m], cf));
          row.emplace_back(cf);
          closed[r.columns[4 + m]] = j9(cf);
        }
        row.emplace_back(worst);
        obj["closed_form"] = closed;
        obj["relative_difference"] = j9(worst);
      } else {
        row.insert(row.end(), 4, Cell{std::string("n/a")});
        obj["closed_form"] = nullptr;
        obj["relative_difference"] = nullptr;
      }
      r.rows.push_back(std::move(row));
      doc.push_back(std::move(obj));
    }
  }
  return emit(req, render(r, parse_format(req.format), doc), out, err);
}

int run_sweep(const Request& req, std::ostream& out, std::ostream& err) {
  const Scenario s = resolve_scenario(req);
  const LayoutKind layout =
      req.layouts.empty() ? LayoutKind::Hexagonal : *parse_layout_kind(req.layouts.front());
  const NeighborMode mode =
      req.neighbors == "on" ? NeighborMode::Adjacent : NeighborMode::None;
  const auto series =
      sweep_beta(s, layout, mode, req.beta_start, req.beta_end, req.beta_step);
  Report r;
  r.columns = {"beta1", "delta_pr_fx"};
  if (req.db) r.columns.push_back("delta_pr_fx_db");
  json points = json::array();
  for (const SweepPoint& p : series) {
    std::vector<Cell> row{p.beta1, p.delta_pr_fx};
    json obj{{"beta1", j9(p.beta1)}, {"delta_pr_fx", j9(p.delta_pr_fx)}};
    if (req.db) {
      row.emplace_back(to_db(p.delta_pr_fx));
      obj["delta_pr_fx_db"] = j9(to_db(p.delta_pr_fx));
    }
    r.rows.push_back(std::move(row));
    points.push_back(std::move(obj));
  }
  const json doc{{"scenario", s.id},
                 {"layout", to_string(layout)},
                 {"mode", to_string(mode)},
                 {"series", points}};
  return emit(req, render(r, parse_format(req.format), doc), out, err);
}

int run_simulate(const Request& req, std::ostream& out, std::ostream& err) {
  if (req.out_path.empty()) {
    err << "error: simulate needs --out <path> for the field CSV\n";
    return kExitUsage;
  }
  const Scenario s = resolve_scenario(req);
  const Deployment& dep = req.deployment == 2 ? s.dep2 : s.dep1;
  const LayoutKind kind =
      req.layouts.empty() ? LayoutKind::Hexagonal : *parse_layout_kind(req.layouts.front());
  const SiteLattice lattice = generate_sites(kind, dep.d_max, req.rings);
  const RfpField field =
      compute_field(lattice, dep, req.resolution, default_region(kind, dep.d_max));
  const UpperBoundReport ub = verify_upper_bound(field, dep, Layout::of(kind));
  const SiteLattice inner = req.rings > 1 ? generate_sites(kind, dep.d_max, req.rings - 1)
                                          : single_site(kind, dep.d_max);
  const double sensitivity = ring_sensitivity(
      field, compute_field(inner, dep, req.resolution, default_region(kind, dep.d_max)));
  const double alpha_lattice = empirical_alpha(field);
  const AlphaEstimate mc = estimate_alpha_monte_carlo(kind, 1'000'000, req.seed);

  {
    std::ofstream file(req.out_path, std::ios::binary);
    file << export_field_csv(field);
    if (!file) {
      err << "error: cannot write '" << req.out_path << "'\n";
      return kExitFailure;
    }
  }

  Report r;
  r.columns = {"layout",         "d_max_m",     "rings",    "resolution_m",
               "pixels",         "excluded",    "empirical_alpha",
               "monte_carlo_alpha", "alpha_closed_form", "ub_checked",
               "ub_violations",  "ring_sensitivity", "csv"};
  r.rows.push_back({std::string(to_string(kind)), dep.d_max,
                    std::to_string(req.rings), req.resolution,
                    std::to_string(field.pixels.size()),
                    std::to_string(field.excluded_count()), alpha_lattice,
                    mc.estimate, layout_alpha(kind), std::to_string(ub.checked),
                    std::to_string(ub.violations.size()), sensitivity, req.out_path});
  const json doc{{"scenario", s.id},
                 {"deployment", req.deployment},
                 {"layout", to_string(kind)},
                 {"d_max_m", j9(dep.d_max)},
                 {"rings", req.rings},
                 {"resolution_m", j9(req.resolution)},
                 {"pixels", field.pixels.size()},
                 {"excluded", field.excluded_count()},
                 {"empirical_alpha", j9(alpha_lattice)},
                 {"monte_carlo_alpha", j9(mc.estimate)},
                 {"monte_carlo_seed", req.seed},
                 {"alpha_closed_form", j9(layout_alpha(kind))},
                 {"ub_checked", ub.checked},
                 {"ub_violations", ub.violations.size()},
                 {"ring_sensitivity", j9(sensitivity)},
                 {"csv", req.out_path}};
  out << render(r, parse_format(req.format), doc);
  return kExitOk;
}

void add_format(CLI::App* cmd, Request& req) {
  cmd->add_option("--format", req.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
}

const auto kLayoutNames = CLI::IsMember({"highway", "square", "hexagonal", "circle"});

}  // namespace

int validate(const ValidationOptions& options, OutputFormat format,
             std::ostream& out, std::ostream& err) {
  const auto checks = run_validation(options);
  Report r;
  r.columns = {"status", "check", "detail"};
  json list = json::array();
  std::vector<std::string> failed;
  for (const CheckResult& c : checks) {
    r.rows.push_back({std::string(c.pass ? "PASS" : "FAIL"), c.name, c.detail});
    list.push_back({{"family", c.family}, {"name", c.name}, {"pass", c.pass},
                    {"detail", c.detail}});
    if (!c.pass) failed.push_back(c.name);
  }
  const json doc{{"checks", list},
                 {"passed", checks.size() - failed.size()},
                 {"failed", failed.size()}};
  if (format == OutputFormat::Table) {
    // Left-aligned is easier to scan for check names.
    for (const auto& row : r.rows) {
      out << std::get<std::string>(row[0]) << "  " << std::get<std::string>(row[1]);
      const auto& detail = std::get<std::string>(row[2]);
      if (!detail.empty()) out << "  (" << detail << ")";
      out << '\n';
    }
    out << checks.size() - failed.size() << "/" << checks.size() << " checks passed\n";
  } else {
    out << render(r, format, doc);
  }
  if (!failed.empty()) {
    err << "failed checks:";
    for (const auto& name : failed) err << ' ' << name;
    err << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compare received-power exposure of two 5G deployments", "rfpcmp"};
  app.require_subcommand(1);
  Request req;

  auto* compare_cmd = app.add_subcommand("compare", "Emitted-power and exposure ratios");
  auto* sweep_cmd = app.add_subcommand("sweep", "Fixed-distance ratio over a beta1 grid");
  auto* simulate_cmd = app.add_subcommand("simulate", "Lattice field simulation to CSV");
  auto* validate_cmd = app.add_subcommand("validate", "Run the self-consistency suite");

  for (CLI::App* cmd : {compare_cmd, sweep_cmd, simulate_cmd}) {
    cmd->add_option("--scenario", req.scenario, "Built-in id (S1..S5) or JSON file");
    cmd->add_option("--out", req.out_path, "Output path");
    add_format(cmd, req);
  }
  for (CLI::App* cmd : {compare_cmd, sweep_cmd}) {
    cmd->add_option("--neighbors", req.neighbors, "Charge adjacent sites")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--beta", req.beta, "Override beta1");
    cmd->add_flag("--db", req.db, "Add 10*log10 columns");
  }
  auto* layout_opt = compare_cmd->add_option("--layout", req.layouts, "Layout(s)")
                         ->check(kLayoutNames);
  compare_cmd->add_flag("--all-layouts", req.all_layouts,
                        "Highway, square and hexagonal")
      ->excludes(layout_opt);
  sweep_cmd->add_option("--layout", req.layouts, "Layout")->check(kLayoutNames)->expected(1);
  sweep_cmd->add_option("--beta-start", req.beta_start, "First beta1")->required();
  sweep_cmd->add_option("--beta-end", req.beta_end, "Last beta1")->required();
  sweep_cmd->add_option("--beta-step", req.beta_step, "beta1 step")->required();

  simulate_cmd->add_option("--layout", req.layouts, "Layout")
      ->check(kLayoutNames)
      ->expected(1)
      ->required();
  simulate_cmd->add_option("--rings", req.rings, "Neighbor rings around the center");
  simulate_cmd->add_option("--resolution", req.resolution, "Pixel size [m]");
  simulate_cmd->add_option("--deployment", req.deployment, "Which deployment (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  simulate_cmd->add_option("--seed", req.seed, "Seed of the Monte Carlo alpha estimate");

  validate_cmd->add_option("--seed", req.seed, "Monte Carlo seed");
  validate_cmd->add_option("--out", req.out_path, "Output path");
  add_format(validate_cmd, req);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compare_cmd->parsed()) return run_compare(req, out, err);
    if (sweep_cmd->parsed()) return run_sweep(req, out, err);
    if (simulate_cmd->parsed()) return run_simulate(req, out, err);
    ValidationOptions options;
    options.seed = req.seed;
    if (req.out_path.empty()) return validate(options, parse_format(req.format), out, err);
    std::ostringstream buffer;
    const int status = validate(options, parse_format(req.format), buffer, err);
    const int written = emit(req, buffer.str(), out, err);
    return written != kExitOk ? written : status;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]";
    if (!e.path().empty()) err << " at " << e.path();
    err << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace rfp::cli
