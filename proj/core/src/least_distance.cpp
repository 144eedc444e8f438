#include "nonlocal/least_distance.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace nonlocal {

namespace {

constexpr double kActiveTol = 1e-9;   // residual below which a row is active
constexpr double kStepTol = 1e-12;    // ||p|| below which we check optimality
constexpr double kMultTol = 1e-10;    // multiplier negativity tolerance

}  // namespace

Eigen::VectorXd least_distance(const Eigen::VectorXd& target,
                               const Eigen::MatrixXd& Aeq,
                               const Eigen::VectorXd& beq,
                               const Eigen::MatrixXd& Ain,
                               const Eigen::VectorXd& bin,
                               const Eigen::VectorXd& start,
                               int max_iterations) {
  const int n = static_cast<int>(target.size());
  const int me = static_cast<int>(Aeq.rows());
  const int mi = static_cast<int>(Ain.rows());

  Eigen::VectorXd z = start;
  if (me > 0) {
    const double eq_residual = (Aeq * z - beq).lpNorm<Eigen::Infinity>();
    if (eq_residual > 1e-7)
      throw InvalidParameter("least_distance: start violates equalities by " +
                             std::to_string(eq_residual));
  }
  std::vector<bool> active(mi, false);
  for (int i = 0; i < mi; ++i) {
    const double slack = Ain.row(i).dot(z) - bin[i];
    if (slack < -1e-7)
      throw InvalidParameter("least_distance: start violates inequality " +
                             std::to_string(i));
    active[i] = (slack <= kActiveTol);
  }

  auto working_matrix = [&](std::vector<int>* idx) {
    idx->clear();
    for (int i = 0; i < mi; ++i)
      if (active[i]) idx->push_back(i);
    Eigen::MatrixXd M(me + idx->size(), n);
    if (me > 0) M.topRows(me) = Aeq;
    for (std::size_t k = 0; k < idx->size(); ++k)
      M.row(me + static_cast<int>(k)) = Ain.row((*idx)[k]);
    return M;
  };

  std::vector<int> widx;
  for (int iter = 0; iter < max_iterations; ++iter) {
    Eigen::MatrixXd M = working_matrix(&widx);

    // Step to the minimizer restricted to the working set: project the
    // residual onto the null space of M, p = (I - M^+ M)(target - z).
    Eigen::VectorXd p = target - z;
    if (M.rows() > 0) {
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
      p -= cod.pseudoInverse() * (M * p);
    }

    if (p.norm() <= kStepTol) {
      // KKT: gradient 2(z - target) must be a nonnegative combination of the
      // active inequality rows (any sign on equalities).
      if (widx.empty()) return z;
      Eigen::VectorXd grad = 2.0 * (z - target);
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
          M.transpose());
      Eigen::VectorXd mu = cod.solve(grad);
      int worst = -1;
      double worst_val = -kMultTol;
      for (std::size_t k = 0; k < widx.size(); ++k) {
        const double v = mu[me + static_cast<int>(k)];
        if (v < worst_val) {
          worst_val = v;
          worst = widx[k];
        }
      }
      if (worst < 0) return z;
      active[worst] = false;
      continue;
    }

    // Longest feasible step along p.
    double alpha = 1.0;
    int blocking = -1;
    for (int i = 0; i < mi; ++i) {
      if (active[i]) continue;
      const double d = Ain.row(i).dot(p);
      if (d < -1e-13) {
        const double room = Ain.row(i).dot(z) - bin[i];
        const double a = std::max(room, 0.0) / (-d);
        if (a < alpha - 1e-15) {
          alpha = a;
          blocking = i;
        }
      }
    }
    z += alpha * p;
    if (blocking >= 0) active[blocking] = true;
  }
  throw LpFailure("least_distance: iteration cap reached");
}

}  // namespace nonlocal
