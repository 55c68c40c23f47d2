#include "glfem/bench.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "glfem/error.hpp"

namespace glfem {

std::string to_string(RefineMode mode) { return mode == RefineMode::Uniform ? "uniform" : "adaptive"; }

RefineMode parse_refine_mode(const std::string& name) {
  if (name == "uniform") return RefineMode::Uniform;
  if (name == "adaptive") return RefineMode::Adaptive;
  throw ConfigError("unknown refinement mode '" + name + "' (expected uniform or adaptive)");
}

double RunConfig::resolved_epsilon() const {
  if (epsilon) return *epsilon;
  switch (problem) {
    case ProblemId::LShape: return 0.4;
    case ProblemId::Slit: return 0.6;
    case ProblemId::Device: return 0.02;
  }
  return 1.0;
}

double RunConfig::resolved_newton_tol() const {
  if (newton_tol) return *newton_tol;
  return problem == ProblemId::Device && refine == RefineMode::Adaptive ? 1e-6 : 1e-8;
}

MethodConfig RunConfig::method_config() const {
  MethodConfig cfg;
  cfg.method = method;
  cfg.sigma = sigma;
  cfg.lambda = lambda;
  cfg.epsilon = resolved_epsilon();
  return cfg;
}

NewtonConfig RunConfig::newton_config() const {
  NewtonConfig ncfg;
  ncfg.tol = resolved_newton_tol();
  ncfg.max_iter = newton_max_iter;
  return ncfg;
}

ProblemSpec RunConfig::problem_spec() const {
  ProblemSpec spec = make_problem(problem, resolved_epsilon());
  if (base_refinements) spec.base_refinements = *base_refinements;
  return spec;
}

void RunConfig::validate() const {
  if (levels < 1) throw ConfigError("levels must be at least 1");
  if (refine == RefineMode::Uniform && levels < 2) throw ConfigError("a uniform study needs at least 2 levels");
  if (base_refinements && *base_refinements < 0) throw ConfigError("base refinements must be non-negative");
  method_config().validate();
  newton_config().validate();
  AdaptConfig{theta, levels, {}}.validate();
  problem_spec();
}

const std::vector<std::string>& knob_names() {
  static const std::vector<std::string> names{"problem", "method",   "refine",          "levels",
                                              "epsilon", "sigma",    "lambda",          "newton_tol",
                                              "newton_max_iter", "theta", "state",     "base_refinements"};
  return names;
}

double h_rate(double e_prev, double e, double h_prev, double h) { return std::log(e / e_prev) / std::log(h / h_prev); }

namespace {

InitialGuess first_guess_for(const RunConfig& cfg, const ProblemSpec& spec) {
  if (cfg.problem != ProblemId::Device) return {};
  const DeviceState state = cfg.state;
  const BoundaryFunction g = spec.g;
  return [state, g](const NonlinearSystem& system) { return initial_guess_director(system.space(), state, g); };
}

}  // namespace

ConvergenceTable run_uniform_study(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.refine != RefineMode::Uniform) throw ConfigError("run_uniform_study needs refine = uniform");
  const ProblemSpec spec = cfg.problem_spec();
  const MethodConfig mcfg = cfg.method_config();
  const NewtonConfig ncfg = cfg.newton_config();
  const InitialGuess first_guess = first_guess_for(cfg, spec);

  ConvergenceTable table{RefineMode::Uniform, {}};
  MeshPtr mesh = initial_level_mesh(spec);
  std::optional<Field> previous;
  for (int level = 0; level < cfg.levels; ++level) {
    if (level > 0) mesh = red_refine(*mesh);
    const Space space(mesh, mcfg.space_kind());
    const NonlinearSystem system(space, mcfg, spec.g, spec.f);
    std::optional<Field> prolonged;
    if (previous) prolonged = prolong(*previous, space);
    const Field guess = prolonged ? *prolonged : (first_guess ? first_guess(system) : initial_guess_laplace(system));
    NewtonResult solved = newton_solve(system, guess, ncfg);

    TableRow row;
    row.level = level;
    row.h = mesh->max_diameter();
    row.ndof = space.dof_count();
    if (spec.exact) {
      row.err_energy = discrete_norm_error(solved.solution, *spec.exact, mcfg.method, mcfg.sigma);
      row.err_l2 = l2_error(solved.solution, *spec.exact);
    } else if (prolonged) {
      const Field diff = solved.solution - *prolonged;
      row.err_energy = discrete_norm(diff, mcfg.method, mcfg.sigma);
      row.err_l2 = l2_norm(diff);
    }
    row.estimator = estimate(solved.solution, mcfg, spec.g, spec.f).total;
    row.energy = energy_functional(solved.solution, mcfg.epsilon);
    if (!table.rows.empty()) {
      const TableRow& prev = table.rows.back();
      if (prev.err_energy && row.err_energy) row.order_energy = h_rate(*prev.err_energy, *row.err_energy, *prev.h, *row.h);
      if (prev.err_l2 && row.err_l2) row.order_l2 = h_rate(*prev.err_l2, *row.err_l2, *prev.h, *row.h);
    }
    table.rows.push_back(row);
    previous = std::move(solved.solution);
  }
  return table;
}

ConvergenceTable run_adaptive_study(const RunConfig& cfg, const LevelObserver& observer) {
  cfg.validate();
  if (cfg.refine != RefineMode::Adaptive) throw ConfigError("run_adaptive_study needs refine = adaptive");
  const ProblemSpec spec = cfg.problem_spec();
  const AdaptConfig acfg{cfg.theta, cfg.levels, {}};
  const auto records =
      adaptive_loop(spec, cfg.method_config(), cfg.newton_config(), acfg, first_guess_for(cfg, spec), observer);

  ConvergenceTable table{RefineMode::Adaptive, {}};
  for (const LevelRecord& rec : records) {
    TableRow row;
    row.level = rec.level;
    row.ndof = rec.ndof;
    row.err_energy = rec.err_energy;
    row.estimator = rec.estimator;
    row.order_e = rec.order_e;
    row.order_est = rec.order_est;
    if (rec.err_energy) row.c_eff = rec.estimator / *rec.err_energy;
    row.newton_iters = rec.newton.iterations;
    table.rows.push_back(row);
  }
  return table;
}

ConvergenceTable run_study(const RunConfig& cfg) {
  return cfg.refine == RefineMode::Uniform ? run_uniform_study(cfg) : run_adaptive_study(cfg);
}

std::vector<std::string> table_columns(RefineMode mode) {
  if (mode == RefineMode::Uniform)
    return {"level", "h", "ndof", "err_energy", "err_l2", "order_energy", "order_l2", "estimator", "energy"};
  return {"level", "ndof", "err_energy", "estimator", "order_e", "order_est", "c_eff", "newton_iters"};
}

namespace {

// Shortest representation that reads back to the same double.
std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }
std::string format_cell(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

std::optional<double>* double_column(TableRow& row, const std::string& name) {
  if (name == "h") return &row.h;
  if (name == "err_energy") return &row.err_energy;
  if (name == "err_l2") return &row.err_l2;
  if (name == "order_energy") return &row.order_energy;
  if (name == "order_l2") return &row.order_l2;
  if (name == "estimator") return &row.estimator;
  if (name == "energy") return &row.energy;
  if (name == "order_e") return &row.order_e;
  if (name == "order_est") return &row.order_est;
  if (name == "c_eff") return &row.c_eff;
  return nullptr;
}

std::string cell(const TableRow& row, const std::string& name) {
  if (name == "level") return std::to_string(row.level);
  if (name == "ndof") return std::to_string(row.ndof);
  if (name == "newton_iters") return format_cell(row.newton_iters);
  return format_cell(*double_column(const_cast<TableRow&>(row), name));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& column) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw IoError("malformed value '" + text + "' in column " + column);
  return value;
}

}  // namespace

void write_table_csv(std::ostream& os, const ConvergenceTable& table) {
  const auto columns = table_columns(table.mode);
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << '\n';
  for (const TableRow& row : table.rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << cell(row, columns[c]);
    os << '\n';
  }
}

ConvergenceTable read_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty convergence table");
  const auto header = split_csv_line(line);
  ConvergenceTable table;
  if (header == table_columns(RefineMode::Uniform))
    table.mode = RefineMode::Uniform;
  else if (header == table_columns(RefineMode::Adaptive))
    table.mode = RefineMode::Adaptive;
  else
    throw IoError("unrecognized convergence table header: " + line);

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw IoError("row has " + std::to_string(cells.size()) + " cells: " + line);
    TableRow row;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& name = header[c];
      const std::string& text = cells[c];
      if (name == "level") {
        row.level = parse_number<int>(text, name);
      } else if (name == "ndof") {
        row.ndof = parse_number<int>(text, name);
      } else if (name == "newton_iters") {
        if (!text.empty()) row.newton_iters = parse_number<int>(text, name);
      } else if (!text.empty()) {
        *double_column(row, name) = parse_number<double>(text, name);
      }
    }
    table.rows.push_back(row);
  }
  return table;
}

std::string meta_json(const RunConfig& cfg, const ConvergenceTable& table) {
  const ProblemSpec spec = cfg.problem_spec();
  nlohmann::ordered_json config;
  config["problem"] = to_string(cfg.problem);
  config["method"] = to_string(cfg.method);
  config["refine"] = to_string(cfg.refine);
  config["levels"] = cfg.levels;
  config["epsilon"] = cfg.resolved_epsilon();
  config["sigma"] = cfg.sigma;
  config["lambda"] = cfg.lambda;
  config["newton_tol"] = cfg.resolved_newton_tol();
  config["newton_max_iter"] = cfg.newton_max_iter;
  config["theta"] = cfg.theta;
  config["state"] = to_string(cfg.state);
  config["base_refinements"] = spec.base_refinements;

  nlohmann::ordered_json meta;
  meta["version"] = kVersion;
  meta["config"] = config;
  meta["lambda_used"] = cfg.method == Method::Dg;
  meta["newton_stopping"] = "discrete norm of the increment";
  meta["warm_start"] = "prolongation of the previous level's solution";
  meta["initial_guess"] = cfg.problem == ProblemId::Device ? "director " + to_string(cfg.state) : "linear problem";
  meta["bisection"] = "one newest vertex bisection per marked triangle plus closure";
  meta["quadrature"] = {{"assembly", "triangle degree 4"},
                        {"errors_and_estimator_volume", "triangle degree 6"},
                        {"edges", "Gauss 3 point"}};
  meta["levels_completed"] = table.rows.size();
  return meta.dump(2) + "\n";
}

std::string plot_script(RefineMode mode) {
  std::string script = R"(#!/usr/bin/env python3
"""Log-log convergence plot for convergence.csv in this directory."""
import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "convergence.csv")) as fh:
    rows = list(csv.DictReader(fh))


def column(name):
    pts = [(r[X], r[name]) for r in rows if r[name]]
    return [float(a) for a, _ in pts], [float(b) for _, b in pts]


)";
  if (mode == RefineMode::Uniform) {
    script += R"(X = "h"
series = [("err_energy", "energy norm error"), ("err_l2", "L2 error"), ("estimator", "estimator")]
)";
  } else {
    script += R"(X = "ndof"
series = [("err_energy", "energy norm error"), ("estimator", "estimator"), ("c_eff", "C_eff")]
)";
  }
  script += R"(
fig, ax = plt.subplots(figsize=(6, 4.5))
for name, label in series:
    xs, ys = column(name)
    if xs:
        ax.loglog(xs, ys, marker="o", label=label)
ax.set_xlabel("h" if X == "h" else "Ndof")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(here, "convergence.png"), dpi=150)
)";
  return script;
}

void emit_outputs(const ConvergenceTable& table, const RunConfig& cfg, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  auto write = [](const std::filesystem::path& path, const auto& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    body(os);
    if (!os) throw IoError("failed writing " + path.string());
  };
  write(dir / "convergence.csv", [&](std::ostream& os) { write_table_csv(os, table); });
  write(dir / "meta.json", [&](std::ostream& os) { os << meta_json(cfg, table); });
  write(dir / "plot_convergence.py", [&](std::ostream& os) { os << plot_script(table.mode); });
}

}  // namespace glfem
