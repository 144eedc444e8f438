#pragma once

#include <Eigen/Dense>

#include "nonlocal/errors.hpp"

namespace nonlocal {

/// Least-distance program: minimize ||z - target||^2 subject to
/// Aeq z = beq and Ain z >= bin, starting from a feasible point.
///
/// Primal active-set method specialized to the identity Hessian; terminates
/// at the exact optimum up to linear-algebra precision. The start must
/// satisfy the equalities (to ~1e-9) and the inequalities (to ~1e-9).
/// Throws LpFailure if the iteration cap is hit without convergence.
Eigen::VectorXd least_distance(const Eigen::VectorXd& target,
                               const Eigen::MatrixXd& Aeq,
                               const Eigen::VectorXd& beq,
                               const Eigen::MatrixXd& Ain,
                               const Eigen::VectorXd& bin,
                               const Eigen::VectorXd& start,
                               int max_iterations = 2000);

}  // namespace nonlocal
