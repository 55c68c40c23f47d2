#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "glfem/fespace.hpp"
#include "glfem/forms.hpp"

namespace glfem {

/// Residual estimator split into its local contributions (unsquared).
///
/// Edge arrays are indexed by edge id; interior_edge is zero on boundary
/// edges and boundary_edge is zero on interior edges.
struct EstimatorBreakdown {
  std::uint64_t mesh_id = 0;
  std::vector<double> volume;
  std::vector<double> interior_edge;
  std::vector<double> boundary_edge;
  double total = 0.0;

  /// sqrt of the sum of all squared local contributions.
  double recomputed_total() const;
};

/// theta_T^2 = h_T^2 |f - 2 eps^-2 (|Psi|^2 - 1) Psi|^2_{0,T},
/// theta_E^2 = h_E |[grad Psi nu_E]|^2_{0,E} on interior edges and
/// (1 / h_E) |Psi - g|^2_{0,E} on boundary edges.
EstimatorBreakdown estimate_nitsche(const Field& psi, const MethodConfig& cfg, const BoundaryFunction& g,
                                    const VectorFunction& f);

/// As estimate_nitsche, with (1 / h_E) |[Psi]|^2_{0,E} added on interior edges.
EstimatorBreakdown estimate_dg(const Field& psi, const MethodConfig& cfg, const BoundaryFunction& g,
                               const VectorFunction& f);

/// Dispatches on cfg.method.
EstimatorBreakdown estimate(const Field& psi, const MethodConfig& cfg, const BoundaryFunction& g,
                            const VectorFunction& f);

/// CSV with header `entity_kind,id,value`; kinds are triangle, interior_edge
/// and boundary_edge.
void write_estimator_csv(std::ostream& os, const EstimatorBreakdown& breakdown, const Mesh& mesh);

}  // namespace glfem
