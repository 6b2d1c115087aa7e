#include "mpc/simplex.hpp"

#include <sstream>

#include "mpc/errors.hpp"

namespace mpc {

SimplexResult solve_max_simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c, double tol, int max_iterations) {
  const Eigen::Index rows = A.rows();
  const Eigen::Index cols = A.cols();
  if (b.size() != rows || c.size() != cols)
    throw PreconditionError("simplex: dimension mismatch");
  for (Eigen::Index r = 0; r < rows; ++r)
    if (b[r] < 0.0) throw PreconditionError("simplex: negative right-hand side");

  const Eigen::Index total = cols + rows;  // structural + slack
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(rows + 1, total + 1);
  tab.block(0, 0, rows, cols) = A;
  tab.block(0, cols, rows, rows).setIdentity();
  tab.col(total).head(rows) = b;
  tab.row(rows).head(cols) = -c.transpose();

  std::vector<Eigen::Index> basis(rows);
  for (Eigen::Index r = 0; r < rows; ++r) basis[r] = cols + r;

  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    // Bland: entering = lowest-index column with a negative reduced cost.
    Eigen::Index entering = -1;
    for (Eigen::Index v = 0; v < total; ++v) {
      if (tab(rows, v) < -tol) {
        entering = v;
        break;
      }
    }
    if (entering < 0) break;  // optimal

    // Ratio test; ties resolved by the smallest basis label (Bland).
    Eigen::Index leaving = -1;
    double best_ratio = 0.0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double a = tab(r, entering);
      if (a > tol) {
        const double ratio = tab(r, total) / a;
        if (leaving < 0 || ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && basis[r] < basis[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
    }
    if (leaving < 0) {
      std::ostringstream msg;
      msg << "simplex: unbounded in column " << entering;
      throw SolverError(msg.str());
    }

    tab.row(leaving) /= tab(leaving, entering);
    for (Eigen::Index r = 0; r <= rows; ++r) {
      if (r == leaving) continue;
      const double factor = tab(r, entering);
      if (factor != 0.0) tab.row(r) -= factor * tab.row(leaving);
    }
    basis[leaving] = entering;
  }
  if (iter >= max_iterations) {
    std::ostringstream msg;
    msg << "simplex: iteration budget exhausted; basis =";
    for (auto v : basis) msg << ' ' << v;
    throw SolverError(msg.str());
  }

  SimplexResult result;
  result.objective = tab(rows, total);
  result.primal = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    if (basis[r] < cols) result.primal[basis[r]] = tab(r, total);
  result.duals = tab.row(rows).segment(cols, rows);
  result.iterations = iter;
  return result;
}

}  // namespace mpc
