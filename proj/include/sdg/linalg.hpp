#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "sdg/types.hpp"

namespace sdg {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;
using TripletList = std::vector<Triplet>;

/// Assembles triplets into compressed row storage, summing duplicates and
/// keeping explicit zeros so the pattern stays structurally symmetric.
SparseMatrix to_sparse(int dim, const TripletList& triplets);

enum class SolveMethod { direct, iterative };

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  SolveMethod method = SolveMethod::direct;
};

struct SolverOptions {
  double rel_tol = 1e-10;
  int max_iter = 10000;
  int restart = 30;
  // Systems up to this size are factorised directly.
  int direct_limit = 20000;
  std::optional<SolveMethod> force_method;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

struct SolveResult {
  VectorX x;
  SolveReport report;
};

/// Solves A x = b to ||A x - b|| <= rel_tol ||b||. Sparse LU for small
/// systems, restarted GMRES with Jacobi preconditioning otherwise. An
/// initial guess, when given, is returned unchanged if it already meets the
/// tolerance. Throws SolverError on breakdown or non-convergence.
SolveResult solve(const SparseMatrix& a, const VectorX& b, const SolverOptions& options = {},
                  const VectorX* initial_guess = nullptr);

double relative_residual(const SparseMatrix& a, const VectorX& x, const VectorX& b);

/// Matrix Market coordinate (real general) dump.
void write_matrix_market(const std::string& path, const SparseMatrix& a);

}  // namespace sdg
