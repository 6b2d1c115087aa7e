#pragma once

#include <Eigen/Dense>

namespace mpc {

struct SimplexResult {
  double objective = 0.0;
  Eigen::VectorXd primal;  // one entry per structural variable
  Eigen::VectorXd duals;   // one entry per constraint row
  int iterations = 0;
};

/// Solves max c'y subject to A y <= b, y >= 0 on a dense full tableau with
/// Bland's rule. Requires b >= 0 so the slack basis starts feasible. Duals
/// are the objective-row entries under the slack columns at optimality.
SimplexResult solve_max_simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c, double tol = 1e-9,
                                int max_iterations = 50000);

}  // namespace mpc
