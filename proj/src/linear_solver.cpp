#include "glfem/linear_solver.hpp"

#include <string>

#include <Eigen/CholmodSupport>
#include <Eigen/UmfPackSupport>

#include "glfem/error.hpp"

namespace glfem {

namespace {

bool all_finite(const Eigen::VectorXd& x) { return x.allFinite(); }

}  // namespace

Eigen::VectorXd solve_sparse(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b, bool symmetric) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw SolverFailureError("linear system dimensions do not match (" + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", rhs " + std::to_string(b.size()) + ")");
  if (a.rows() == 0) return Eigen::VectorXd();

  if (symmetric) {
    Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<double>> llt(a);
    if (llt.info() == Eigen::Success) {
      Eigen::VectorXd x = llt.solve(b);
      if (llt.info() == Eigen::Success && all_finite(x)) return x;
    }
  }

  Eigen::UmfPackLU<Eigen::SparseMatrix<double>> lu(a);
  if (lu.info() != Eigen::Success)
    throw SolverFailureError("sparse LU factorization failed (matrix is singular to working precision, " +
                             std::to_string(a.rows()) + " unknowns)");
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success || !all_finite(x))
    throw SolverFailureError("sparse LU solve produced a non-finite solution (" + std::to_string(a.rows()) +
                             " unknowns); the matrix is numerically singular");
  return x;
}

}  // namespace glfem
