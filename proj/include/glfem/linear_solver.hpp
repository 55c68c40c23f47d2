#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace glfem {

/// Solves a x = b with a sparse direct factorization.
///
/// Symmetric systems try a supernodal Cholesky first and fall back to LU when
/// the matrix is not positive definite. Throws SolverFailureError when the
/// factorization fails or the solution is not finite.
Eigen::VectorXd solve_sparse(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b, bool symmetric);

}  // namespace glfem
