#include <doctest.h>

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <random>

#include "sdg/linalg.hpp"

using namespace sdg;

namespace {

SparseMatrix random_dominant(int n, double density, std::mt19937& rng, TripletList* out = nullptr) {
  std::uniform_real_distribution<double> uni(-1, 1), coin(0, 1);
  TripletList t;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j || coin(rng) > density) continue;
      const double v = uni(rng);
      row += std::abs(v);
      t.emplace_back(i, j, v);
    }
    t.emplace_back(i, i, row + 1.0 + coin(rng));
  }
  if (out) *out = t;
  return to_sparse(n, t);
}

}  // namespace

TEST_CASE("identity solves in at most one step") {
  SparseMatrix eye(5, 5);
  eye.setIdentity();
  const VectorX b = VectorX::LinSpaced(5, 1, 5);
  for (auto method : {SolveMethod::direct, SolveMethod::iterative}) {
    SolverOptions opt;
    opt.force_method = method;
    const SolveResult r = solve(eye, b, opt);
    CHECK((r.x - b).norm() < 1e-14);
    CHECK(r.report.iterations <= 1);
    CHECK(r.report.method == method);
  }
  CHECK(solve(eye, VectorX::Zero(5)).x.norm() == 0.0);
}

TEST_CASE("random dominant systems against a dense oracle") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const SparseMatrix a = random_dominant(50, 0.2, rng);
    VectorX b(50);
    for (int i = 0; i < 50; ++i) b[i] = std::sin(i + trial);
    const VectorX oracle = Eigen::MatrixXd(a).partialPivLu().solve(b);
    for (auto method : {SolveMethod::direct, SolveMethod::iterative}) {
      SolverOptions opt;
      opt.force_method = method;
      const SolveResult r = solve(a, b, opt);
      CHECK((r.x - oracle).norm() <= 1e-8 * oracle.norm());
      CHECK(r.report.relative_residual <= opt.rel_tol);
    }
  }
}

TEST_CASE("re-solving from a converged answer is cheap") {
  std::mt19937 rng(8);
  const SparseMatrix a = random_dominant(400, 0.02, rng);
  const VectorX b = VectorX::Ones(400);
  SolverOptions opt;
  opt.force_method = SolveMethod::iterative;
  const SolveResult first = solve(a, b, opt);
  const SolveResult second = solve(a, b, opt, &first.x);
  CHECK(second.report.iterations <= 2);
  CHECK(second.report.relative_residual <= 1e-10);
}

TEST_CASE("singular systems report non-convergence") {
  TripletList t{{0, 0, 1.0}, {1, 1, 2.0}, {2, 0, 0.0}};
  const SparseMatrix a = to_sparse(3, t);
  const VectorX b = VectorX::Ones(3);
  for (auto method : {SolveMethod::direct, SolveMethod::iterative}) {
    SolverOptions opt;
    opt.force_method = method;
    opt.max_iter = 50;
    CHECK_THROWS_AS(solve(a, b, opt), SolverError);
  }
  try {
    SolverOptions opt;
    opt.force_method = SolveMethod::iterative;
    opt.max_iter = 50;
    solve(a, b, opt);
  } catch (const SolverError& e) {
    CHECK(e.best_residual() > 0.1);
  }
  CHECK_THROWS_AS(solve(a, VectorX::Ones(2)), std::invalid_argument);
}

TEST_CASE("matvec against a triplet oracle") {
  std::mt19937 rng(13);
  TripletList t;
  random_dominant(60, 0.1, rng, &t);
  // Duplicate entries must be summed.
  t.emplace_back(3, 7, 0.25);
  t.emplace_back(3, 7, 0.5);
  const SparseMatrix b = to_sparse(60, t);
  std::uniform_real_distribution<double> uni(-1, 1);
  VectorX x(60);
  for (int i = 0; i < 60; ++i) x[i] = uni(rng);
  VectorX oracle = VectorX::Zero(60);
  for (const auto& e : t) oracle[e.row()] += e.value() * x[e.col()];
  CHECK((b * x - oracle).lpNorm<Eigen::Infinity>() < 1e-14);
  CHECK(b.isCompressed());
  for (int r = 0; r < b.outerSize(); ++r) {
    int last = -1;
    for (SparseMatrix::InnerIterator it(b, r); it; ++it) {
      CHECK(it.col() > last);
      last = static_cast<int>(it.col());
    }
  }
}

TEST_CASE("matrix market dump") {
  TripletList t{{0, 0, 1.5}, {1, 0, -2.0}, {1, 1, 3.0}};
  const SparseMatrix a = to_sparse(2, t);
  const std::string path = "linalg_dump.mtx";
  write_matrix_market(path, a);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "%%MatrixMarket matrix coordinate real general");
  int rows = 0, cols = 0, nnz = 0;
  in >> rows >> cols >> nnz;
  CHECK(rows == 2);
  CHECK(cols == 2);
  CHECK(nnz == 3);
  std::remove(path.c_str());
}
