#include "doctest.h"
#include "mpc/errors.hpp"
#include "mpc/simplex.hpp"
#include "support/test_support.hpp"

using namespace mpc;

TEST_CASE("simplex solves a 2x2 box") {
  Eigen::MatrixXd A(2, 2);
  A << 1, 0, 0, 1;
  Eigen::VectorXd b = Eigen::VectorXd::Ones(2);
  Eigen::VectorXd c(2);
  c << 3, 2;
  auto r = solve_max_simplex(A, b, c);
  CHECK(r.objective == doctest::Approx(5.0));
  CHECK(r.primal[0] == doctest::Approx(1.0));
  CHECK(r.primal[1] == doctest::Approx(1.0));
  CHECK(r.duals[0] == doctest::Approx(3.0));
  CHECK(r.duals[1] == doctest::Approx(2.0));
}

TEST_CASE("simplex handles coupled constraints") {
  // max x + y st x + y <= 1, x <= 0.6
  Eigen::MatrixXd A(2, 2);
  A << 1, 1, 1, 0;
  Eigen::VectorXd b(2);
  b << 1, 0.6;
  Eigen::VectorXd c(2);
  c << 1, 1;
  auto r = solve_max_simplex(A, b, c);
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("simplex ignores unprofitable columns") {
  Eigen::MatrixXd A(1, 2);
  A << 1, 1;
  Eigen::VectorXd b(1);
  b << 1;
  Eigen::VectorXd c(2);
  c << -0.5, 2.0;
  auto r = solve_max_simplex(A, b, c);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.primal[0] == doctest::Approx(0.0));
  CHECK(r.primal[1] == doctest::Approx(1.0));
}

TEST_CASE("simplex reports unbounded problems") {
  Eigen::MatrixXd A(1, 1);
  A << -1;
  Eigen::VectorXd b(1);
  b << 1;
  Eigen::VectorXd c(1);
  c << 1;
  CHECK_THROWS_AS(solve_max_simplex(A, b, c), SolverError);
}

TEST_CASE("property: duals are feasible and match the objective") {
  testing::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = rng.uniform_int(1, 6);
    const int cols = rng.uniform_int(1, 10);
    Eigen::MatrixXd A(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int k = 0; k < cols; ++k) A(r, k) = rng.chance(0.4) ? rng.uniform(0.0, 1.0) : 0.0;
    // Keep every column bounded by some constraint.
    for (int k = 0; k < cols; ++k) A(rng.uniform_int(0, rows - 1), k) += rng.uniform(0.1, 1.0);
    Eigen::VectorXd b(rows);
    for (int r = 0; r < rows; ++r) b[r] = rng.uniform(0.0, 2.0);
    Eigen::VectorXd c(cols);
    for (int k = 0; k < cols; ++k) c[k] = rng.uniform(-1.0, 1.0);

    auto res = solve_max_simplex(A, b, c);
    // Primal feasibility.
    Eigen::VectorXd slack = b - A * res.primal;
    for (int r = 0; r < rows; ++r) CHECK(slack[r] >= -1e-9);
    for (int k = 0; k < cols; ++k) CHECK(res.primal[k] >= -1e-9);
    // Dual feasibility: duals >= 0 and A' dual >= c.
    for (int r = 0; r < rows; ++r) CHECK(res.duals[r] >= -1e-9);
    Eigen::VectorXd reduced = A.transpose() * res.duals - c;
    for (int k = 0; k < cols; ++k) CHECK(reduced[k] >= -1e-9);
    // Strong duality.
    CHECK(res.objective == doctest::Approx(b.dot(res.duals)).epsilon(1e-7));
    CHECK(res.objective == doctest::Approx(c.dot(res.primal)).epsilon(1e-7));
  }
}
