#include "glfem/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace glfem {

void AdaptConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("Doerfler theta must lie in (0, 1]");
  if (max_levels < 1) throw ConfigError("max_levels must be at least 1");
  if (target_ndof && *target_ndof < 1) throw ConfigError("target_ndof must be positive");
}

std::vector<double> element_indicator(const EstimatorBreakdown& breakdown, const Mesh& mesh) {
  if (breakdown.mesh_id != mesh.id() || breakdown.volume.size() != static_cast<std::size_t>(mesh.triangle_count()) ||
      breakdown.interior_edge.size() != static_cast<std::size_t>(mesh.edge_count()) ||
      breakdown.boundary_edge.size() != static_cast<std::size_t>(mesh.edge_count()))
    throw ConsistencyError("estimator breakdown does not belong to this mesh");
  std::vector<double> squared(mesh.triangle_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) squared[t] = breakdown.volume[t] * breakdown.volume[t];
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Edge& ed = mesh.edge(e);
    const double v = ed.is_boundary() ? breakdown.boundary_edge[e] : breakdown.interior_edge[e];
    squared[ed.left] += v * v;
    if (!ed.is_boundary()) squared[ed.right] += v * v;
  }
  for (double& s : squared) s = std::sqrt(s);
  return squared;
}

std::vector<int> dorfler_mark(std::span<const double> indicators, double theta) {
  if (indicators.empty()) throw ConfigError("cannot mark on an empty mesh");
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("Doerfler theta must lie in (0, 1]");
  std::vector<int> order(indicators.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return indicators[a] > indicators[b]; });

  double total = 0.0;
  for (double v : indicators) total += v * v;
  const double goal = theta * total;

  std::vector<int> marked;
  double sum = 0.0;
  for (int t : order) {
    if (sum >= goal && !marked.empty()) break;
    if (indicators[t] == 0.0) break;
    marked.push_back(t);
    sum += indicators[t] * indicators[t];
  }
  std::sort(marked.begin(), marked.end());
  return marked;
}

double ndof_rate(double a_prev, double a, double n_prev, double n) { return std::log(a_prev / a) / std::log(n / n_prev); }

MeshPtr initial_level_mesh(const ProblemSpec& problem) {
  return red_refine(*build_initial_mesh(problem.shape), problem.base_refinements);
}

std::vector<LevelRecord> adaptive_loop(const ProblemSpec& problem, const MethodConfig& cfg, const NewtonConfig& ncfg,
                                       const AdaptConfig& acfg, const InitialGuess& first_guess,
                                       const LevelObserver& observer) {
  cfg.validate();
  ncfg.validate();
  acfg.validate();

  std::vector<LevelRecord> records;
  MeshPtr mesh = initial_level_mesh(problem);
  std::optional<Field> previous;

  for (int level = 0; level < acfg.max_levels; ++level) {
    const Space space(mesh, cfg.space_kind());
    const NonlinearSystem system(space, cfg, problem.g, problem.f);

    NewtonResult solved{Field(space), {}};
    try {
      Field guess = previous ? prolong(*previous, space)
                             : (first_guess ? first_guess(system) : initial_guess_laplace(system));
      solved = newton_solve(system, guess, ncfg);
    } catch (const SolverFailureError& err) {
      throw AdaptiveLoopError("level " + std::to_string(level) + ": " + err.what(), std::move(records));
    }

    LevelRecord rec;
    rec.level = level;
    rec.ndof = space.dof_count();
    rec.triangles = mesh->triangle_count();
    rec.h_max = mesh->max_diameter();
    rec.min_angle = mesh->min_angle();
    rec.newton = solved.report;
    rec.energy = energy_functional(solved.solution, cfg.epsilon);
    if (problem.exact) {
      rec.err_energy = discrete_norm_error(solved.solution, *problem.exact, cfg.method, cfg.sigma);
      rec.err_l2 = l2_error(solved.solution, *problem.exact);
    }
    const EstimatorBreakdown breakdown = estimate(solved.solution, cfg, problem.g, problem.f);
    rec.estimator = breakdown.total;
    if (!records.empty()) {
      const LevelRecord& prev = records.back();
      if (rec.err_energy && prev.err_energy)
        rec.order_e = ndof_rate(*prev.err_energy, *rec.err_energy, prev.ndof, rec.ndof);
      rec.order_est = ndof_rate(prev.estimator, rec.estimator, prev.ndof, rec.ndof);
    }

    const bool last = level + 1 == acfg.max_levels || (acfg.target_ndof && rec.ndof >= *acfg.target_ndof);
    const std::vector<double> indicators = element_indicator(breakdown, *mesh);
    const std::vector<int> marked = last ? std::vector<int>{} : dorfler_mark(indicators, acfg.theta);
    records.push_back(rec);
    if (observer) observer(LevelState{records.back(), solved.solution, breakdown, indicators, marked});
    if (last) break;

    previous = std::move(solved.solution);
    mesh = nvb_refine(*mesh, marked);
  }
  return records;
}

}  // namespace glfem
