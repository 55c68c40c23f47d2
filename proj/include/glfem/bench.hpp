#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "glfem/adapt.hpp"
#include "glfem/problems.hpp"
#include "glfem/solver.hpp"

namespace glfem {

inline constexpr const char* kVersion = "0.1.0";

enum class RefineMode { Uniform, Adaptive };

std::string to_string(RefineMode mode);
RefineMode parse_refine_mode(const std::string& name);

/// Full description of one convergence study. Unset optionals take the
/// problem dependent defaults below.
struct RunConfig {
  ProblemId problem = ProblemId::LShape;
  Method method = Method::Nitsche;
  RefineMode refine = RefineMode::Uniform;
  int levels = 4;
  double sigma = 10.0;
  double lambda = 1.0;
  /// Defaults: 0.4 (lshape), 0.6 (slit), 0.02 (device).
  std::optional<double> epsilon;
  /// Defaults: 1e-6 for adaptive device runs, 1e-8 otherwise.
  std::optional<double> newton_tol;
  int newton_max_iter = 50;
  double theta = 0.3;
  DeviceState state = DeviceState::D1;
  /// Red refinements making up level 0; defaults to the problem's value.
  std::optional<int> base_refinements;

  double resolved_epsilon() const;
  double resolved_newton_tol() const;
  MethodConfig method_config() const;
  NewtonConfig newton_config() const;
  ProblemSpec problem_spec() const;
  void validate() const;
};

/// Names of every RunConfig knob echoed into meta.json.
const std::vector<std::string>& knob_names();

/// One CSV row. Uniform tables fill level, h, ndof, err_energy, err_l2,
/// order_energy, order_l2, estimator and energy; adaptive tables fill level,
/// ndof, err_energy, estimator, order_e, order_est, c_eff and newton_iters.
/// Missing values (no exact solution, level 0 orders) stay empty.
struct TableRow {
  int level = 0;
  std::optional<double> h;
  int ndof = 0;
  std::optional<double> err_energy;
  std::optional<double> err_l2;
  std::optional<double> order_energy;
  std::optional<double> order_l2;
  std::optional<double> estimator;
  std::optional<double> energy;
  std::optional<double> order_e;
  std::optional<double> order_est;
  std::optional<double> c_eff;
  std::optional<int> newton_iters;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct ConvergenceTable {
  RefineMode mode = RefineMode::Uniform;
  std::vector<TableRow> rows;

  friend bool operator==(const ConvergenceTable&, const ConvergenceTable&) = default;
};

/// log(e_prev / e) / log(h_prev / h).
double h_rate(double e_prev, double e, double h_prev, double h);

/// Red refinement study. With an exact solution the errors are measured
/// against it; otherwise they are the norms of the difference between the
/// prolonged previous solution and the current one.
ConvergenceTable run_uniform_study(const RunConfig& cfg);

/// Adaptive study; the observer sees each level before refinement.
ConvergenceTable run_adaptive_study(const RunConfig& cfg, const LevelObserver& observer = {});

ConvergenceTable run_study(const RunConfig& cfg);

std::vector<std::string> table_columns(RefineMode mode);
void write_table_csv(std::ostream& os, const ConvergenceTable& table);
ConvergenceTable read_table_csv(std::istream& is);

/// meta.json contents: configuration echo, resolved defaults and version.
std::string meta_json(const RunConfig& cfg, const ConvergenceTable& table);

/// Python script plotting convergence.csv from its own directory.
std::string plot_script(RefineMode mode);

/// Writes convergence.csv, meta.json and plot_convergence.py into dir.
void emit_outputs(const ConvergenceTable& table, const RunConfig& cfg, const std::filesystem::path& dir);

}  // namespace glfem
