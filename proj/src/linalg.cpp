#include "sdg/linalg.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

namespace sdg {

SparseMatrix to_sparse(int dim, const TripletList& triplets) {
  SparseMatrix a(dim, dim);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

double relative_residual(const SparseMatrix& a, const VectorX& x, const VectorX& b) {
  const double nb = b.norm();
  const double r = (a * x - b).norm();
  return nb > 0.0 ? r / nb : r;
}

namespace {

SolveResult solve_direct(const SparseMatrix& a, const VectorX& b, const SolverOptions& options) {
  Eigen::SparseMatrix<double> col_major = a;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(col_major);
  lu.factorize(col_major);
  if (lu.info() != Eigen::Success) throw SolverError("sparse LU factorisation failed: " + lu.lastErrorMessage(), 1.0);

  SolveResult out;
  out.report.method = SolveMethod::direct;
  out.x = lu.solve(b);
  out.report.iterations = 1;
  out.report.relative_residual = relative_residual(a, out.x, b);
  // A couple of refinement sweeps recover digits lost to pivoting.
  for (int sweep = 0; sweep < 3 && out.report.relative_residual > options.rel_tol; ++sweep) {
    out.x += lu.solve(VectorX(b - a * out.x));
    out.report.relative_residual = relative_residual(a, out.x, b);
    ++out.report.iterations;
  }
  if (!std::isfinite(out.report.relative_residual) || out.report.relative_residual > options.rel_tol) {
    throw SolverError("direct solve did not reach the requested tolerance", out.report.relative_residual);
  }
  return out;
}

SolveResult solve_iterative(const SparseMatrix& a, const VectorX& b, const SolverOptions& options,
                            const VectorX* initial_guess) {
  Eigen::GMRES<SparseMatrix, Eigen::DiagonalPreconditioner<double>> gmres;
  gmres.set_restart(options.restart);
  gmres.compute(a);

  SolveResult out;
  out.report.method = SolveMethod::iterative;
  out.x = initial_guess ? *initial_guess : VectorX::Zero(b.size());
  out.report.relative_residual = relative_residual(a, out.x, b);
  // GMRES measures the preconditioned residual relative to its starting value;
  // restart from the best iterate with a tighter target until the true one passes.
  double safety = 1.0;
  for (int attempt = 0; attempt < 4 && out.report.relative_residual > options.rel_tol; ++attempt) {
    gmres.setTolerance(safety * options.rel_tol / out.report.relative_residual);
    gmres.setMaxIterations(options.max_iter - out.report.iterations);
    VectorX x = gmres.solveWithGuess(b, out.x);
    out.report.iterations += static_cast<int>(gmres.iterations());
    const double res = relative_residual(a, x, b);
    if (std::isfinite(res) && res < out.report.relative_residual) {
      out.x = std::move(x);
      out.report.relative_residual = res;
    }
    if (out.report.iterations >= options.max_iter) break;
    safety *= 0.1;
  }
  if (!std::isfinite(out.report.relative_residual) || out.report.relative_residual > options.rel_tol) {
    throw SolverError("GMRES did not converge", out.report.relative_residual);
  }
  return out;
}

}  // namespace

SolveResult solve(const SparseMatrix& a, const VectorX& b, const SolverOptions& options,
                  const VectorX* initial_guess) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve: matrix must be square");
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side size mismatch");

  if (b.norm() == 0.0) return {VectorX::Zero(b.size()), {0, 0.0, SolveMethod::direct}};

  const SolveMethod method =
      options.force_method.value_or(a.rows() <= options.direct_limit ? SolveMethod::direct : SolveMethod::iterative);

  if (initial_guess) {
    const double r0 = relative_residual(a, *initial_guess, b);
    if (r0 <= options.rel_tol) return {*initial_guess, {0, r0, method}};
  }
  return method == SolveMethod::direct ? solve_direct(a, b, options) : solve_iterative(a, b, options, initial_guess);
}

void write_matrix_market(const std::string& path, const SparseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  out << std::setprecision(17);
  for (int r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
  }
}

}  // namespace sdg
