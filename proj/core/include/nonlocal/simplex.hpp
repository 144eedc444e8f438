#pragma once

#include <Eigen/Dense>

#include "nonlocal/errors.hpp"

namespace nonlocal {

/// Linear program in standard form: minimize c.z subject to A z = b, z >= 0.
struct LpProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

struct LpSolution {
  Eigen::VectorXd z;
  double objective = 0.0;
  int iterations = 0;
  double phase1_infeasibility = 0.0;  // residual left by phase 1
};

/// Dense two-phase primal simplex. Deterministic pivoting (Dantzig with a
/// Bland fallback against cycling). Redundant equality rows are tolerated.
/// Throws LpFailure on infeasibility (beyond feas_tol), unboundedness, or
/// iteration cap.
LpSolution solve_lp(const LpProblem& lp, double feas_tol = 1e-9);

/// Incremental builder that converts <=, >= and = rows over n structural
/// variables (all implicitly >= 0) into standard form.
class LpBuilder {
public:
  explicit LpBuilder(int n_vars);

  void add_eq(const Eigen::VectorXd& row, double rhs);
  void add_ge(const Eigen::VectorXd& row, double rhs);  // row.z >= rhs
  void add_le(const Eigen::VectorXd& row, double rhs);  // row.z <= rhs

  /// Objective over the structural variables (slack costs are zero).
  LpProblem build(const Eigen::VectorXd& cost) const;

  int n_vars() const { return n_vars_; }

private:
  struct Row {
    Eigen::VectorXd a;
    double rhs;
    int kind;  // 0: eq, 1: ge, -1: le
  };
  int n_vars_;
  std::vector<Row> rows_;
};

}  // namespace nonlocal
