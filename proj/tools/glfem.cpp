// Command line driver for the convergence studies.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "glfem/bench.hpp"
#include "glfem/error.hpp"

namespace {

void print_table(const glfem::ConvergenceTable& table) {
  const auto columns = glfem::table_columns(table.mode);
  for (const auto& c : columns) std::printf("%14s", c.c_str());
  std::printf("\n");
  auto show = [](const std::optional<double>& v) {
    if (v)
      std::printf("%14.6g", *v);
    else
      std::printf("%14s", "-");
  };
  for (const auto& r : table.rows) {
    std::printf("%14d", r.level);
    if (table.mode == glfem::RefineMode::Uniform) {
      show(r.h);
      std::printf("%14d", r.ndof);
      for (const auto* v : {&r.err_energy, &r.err_l2, &r.order_energy, &r.order_l2, &r.estimator, &r.energy}) show(*v);
    } else {
      std::printf("%14d", r.ndof);
      for (const auto* v : {&r.err_energy, &r.estimator, &r.order_e, &r.order_est, &r.c_eff}) show(*v);
      std::printf("%14d", r.newton_iters.value_or(0));
    }
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nitsche / dG finite element solver for the Ginzburg-Landau system"};

  std::string problem = "lshape", method = "nitsche", refine = "uniform", state = "D1", out;
  glfem::RunConfig cfg;
  std::optional<double> epsilon, newton_tol;
  std::optional<int> base;

  app.add_option("--problem", problem, "Benchmark problem")
      ->check(CLI::IsMember({"lshape", "slit", "device"}))
      ->capture_default_str();
  app.add_option("--method", method, "Discretization")->check(CLI::IsMember({"nitsche", "dg"}))->capture_default_str();
  app.add_option("--refine", refine, "Refinement strategy")
      ->check(CLI::IsMember({"uniform", "adaptive"}))
      ->capture_default_str();
  app.add_option("--levels", cfg.levels, "Number of meshes solved on")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--epsilon", epsilon, "Model parameter (default 0.4 lshape, 0.6 slit, 0.02 device)");
  app.add_option("--sigma", cfg.sigma, "Penalty parameter")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "dG symmetrization parameter in [-1, 1]")->capture_default_str();
  app.add_option("--newton-tol", newton_tol, "Newton tolerance (default 1e-8; 1e-6 for adaptive device runs)");
  app.add_option("--newton-max-iter", cfg.newton_max_iter, "Newton iteration cap")->capture_default_str();
  app.add_option("--theta", cfg.theta, "Doerfler marking fraction")->capture_default_str();
  app.add_option("--state", state, "Device target state")
      ->check(CLI::IsMember({"D1", "D2", "R1", "R2", "R3", "R4"}))
      ->capture_default_str();
  app.add_option("--base-refinements", base, "Red refinements of the coarse mesh forming level 0");
  app.add_option("--out", out, "Directory for convergence.csv, meta.json and the plot script");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.problem = glfem::parse_problem_id(problem);
    cfg.method = glfem::parse_method(method);
    cfg.refine = glfem::parse_refine_mode(refine);
    cfg.state = glfem::parse_device_state(state);
    cfg.epsilon = epsilon;
    cfg.newton_tol = newton_tol;
    cfg.base_refinements = base;
    cfg.validate();

    const glfem::ConvergenceTable table = glfem::run_study(cfg);
    print_table(table);
    if (!out.empty()) {
      glfem::emit_outputs(table, cfg, out);
      std::cout << "wrote " << std::filesystem::path(out) / "convergence.csv" << '\n';
    }
  } catch (const glfem::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
