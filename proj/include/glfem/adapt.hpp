#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "glfem/estimator.hpp"
#include "glfem/problems.hpp"
#include "glfem/solver.hpp"

namespace glfem {

struct AdaptConfig {
  double theta = 0.3;
  /// Number of meshes solved on, including the initial one.
  int max_levels = 8;
  /// Stop after the first level whose Ndof reaches this value.
  std::optional<int> target_ndof;

  void validate() const;
};

/// Xi_T = (theta_T^2 + sum over the edges of T of theta_E^2)^(1/2); every edge
/// contributes its full value to each adjacent triangle.
std::vector<double> element_indicator(const EstimatorBreakdown& breakdown, const Mesh& mesh);

/// Smallest greedy set (largest indicators first, ties by lower id) whose
/// squared sum reaches theta times the total squared sum. Returned sorted by
/// triangle id.
std::vector<int> dorfler_mark(std::span<const double> indicators, double theta);

/// One level of an adaptive or uniform computation.
struct LevelRecord {
  int level = 0;
  int ndof = 0;
  int triangles = 0;
  double h_max = 0.0;
  double min_angle = 0.0;
  std::optional<double> err_energy;
  std::optional<double> err_l2;
  double estimator = 0.0;
  double energy = 0.0;
  NewtonReport newton;
  /// Rates with respect to Ndof; absent on level 0.
  std::optional<double> order_e;
  std::optional<double> order_est;
};

/// Everything computed on one adaptive level, handed to the observer before
/// the mesh is refined. `marked` is empty on the last level.
struct LevelState {
  const LevelRecord& record;
  const Field& solution;
  const EstimatorBreakdown& breakdown;
  const std::vector<double>& indicators;
  const std::vector<int>& marked;
};

using LevelObserver = std::function<void(const LevelState&)>;

/// Produces the Newton starting guess on the first level.
using InitialGuess = std::function<Field(const NonlinearSystem&)>;

/// Raised when a level fails; records holds the levels completed before it.
class AdaptiveLoopError : public SolverFailureError {
 public:
  AdaptiveLoopError(const std::string& what, std::vector<LevelRecord> records)
      : SolverFailureError(what), records_(std::move(records)) {}
  const std::vector<LevelRecord>& records() const { return records_; }

 private:
  std::vector<LevelRecord> records_;
};

/// log(a_prev / a) / log(n / n_prev).
double ndof_rate(double a_prev, double a, double n_prev, double n);

/// SOLVE, ESTIMATE, MARK, REFINE starting from the problem's level 0 mesh.
/// Later levels start Newton from the prolonged previous solution. A null
/// first_guess uses the linear (Laplace) guess.
std::vector<LevelRecord> adaptive_loop(const ProblemSpec& problem, const MethodConfig& cfg, const NewtonConfig& ncfg,
                                       const AdaptConfig& acfg, const InitialGuess& first_guess = {},
                                       const LevelObserver& observer = {});

/// Level 0 mesh of a problem: its coarse mesh after base_refinements red steps.
MeshPtr initial_level_mesh(const ProblemSpec& problem);

}  // namespace glfem
