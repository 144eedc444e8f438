#include "nonlocal/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace nonlocal {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-10;

// Full-tableau primal simplex with two cost rows carried through phase 1.
// Deterministic: Dantzig pricing with lowest-index ties, switching to
// Bland's rule after a run of degenerate pivots.
class Tableau {
public:
  // A is m x n with b >= 0 assumed; artificials occupy columns n..n+m-1.
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
          const Eigen::VectorXd& cost)
      : m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())) {
    T_.setZero(m_ + 2, n_ + m_ + 1);
    T_.block(0, 0, m_, n_) = A;
    T_.block(0, n_, m_, m_).setIdentity();
    T_.col(n_ + m_).head(m_) = b;
    basis_.resize(m_);
    row_active_.assign(m_, true);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;

    // Row m_: phase-1 objective (sum of artificials); reduced costs start
    // as the negated column sums over constraint rows.
    for (int j = 0; j < n_; ++j) T_(m_, j) = -A.col(j).sum();
    T_(m_, n_ + m_) = -b.sum();
    // Row m_+1: phase-2 objective carried through phase-1 pivots.
    T_.row(m_ + 1).head(n_) = cost.transpose();
  }

  // Runs the simplex on cost row `row`, allowing columns < allow_below.
  // Returns false on unboundedness.
  bool optimize(int row, int allow_below, int* iterations) {
    int degenerate_run = 0;
    bool bland = false;
    const int cap = 2000 + 200 * (m_ + n_);
    for (int it = 0; it < cap; ++it) {
      int enter = -1;
      double best = -kCostTol;
      for (int j = 0; j < allow_below; ++j) {
        const double rc = T_(row, j);
        if (rc < -kCostTol) {
          if (bland) {
            enter = j;
            break;
          }
          if (rc < best) {
            best = rc;
            enter = j;
          }
        }
      }
      if (enter < 0) {
        *iterations += it;
        return true;  // optimal
      }

      int leave = -1;
      double min_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (!row_active_[i]) continue;
        const double a = T_(i, enter);
        if (a > kPivotTol) {
          const double ratio = T_(i, n_ + m_) / a;
          if (ratio < min_ratio - 1e-12 ||
              (ratio < min_ratio + 1e-12 && leave >= 0 &&
               basis_[i] < basis_[leave])) {
            min_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) {
        *iterations += it;
        return false;  // unbounded in this column
      }

      if (min_ratio < 1e-12) {
        if (++degenerate_run > 2 * (m_ + n_)) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(leave, enter);
    }
    throw LpFailure("simplex: iteration cap reached");
  }

  void pivot(int r, int c) {
    T_.row(r) /= T_(r, c);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double f = T_(i, c);
      if (f != 0.0) T_.row(i) -= f * T_.row(r);
    }
    basis_[r] = c;
  }

  double phase1_objective() const { return -T_(m_, n_ + m_); }
  double phase2_objective() const { return -T_(m_ + 1, n_ + m_); }

  // After phase 1, pivot artificial variables out of the basis where
  // possible and deactivate redundant rows.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!row_active_[i] || basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j) {
        if (std::abs(T_(i, j)) > 1e-8) {
          col = j;
          break;
        }
      }
      if (col >= 0)
        pivot(i, col);
      else
        row_active_[i] = false;  // redundant constraint row
    }
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (row_active_[i] && basis_[i] < n_)
        z[basis_[i]] = std::max(T_(i, n_ + m_), 0.0);
    return z;
  }

  int n() const { return n_; }

private:
  int m_, n_;
  Eigen::MatrixXd T_;
  std::vector<int> basis_;
  std::vector<bool> row_active_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& lp, double feas_tol) {
  const int m = static_cast<int>(lp.A.rows());
  const int n = static_cast<int>(lp.A.cols());
  if (lp.b.size() != m || lp.c.size() != n)
    throw InvalidParameter("solve_lp: inconsistent problem sizes");

  Eigen::MatrixXd A = lp.A;
  Eigen::VectorXd b = lp.b;
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      A.row(i) = -A.row(i);
      b[i] = -b[i];
    }
  }

  Tableau tab(A, b, lp.c);
  LpSolution sol;

  if (!tab.optimize(m, n, &sol.iterations))
    throw LpFailure("solve_lp: phase 1 unbounded (internal error)");
  sol.phase1_infeasibility = tab.phase1_objective();
  if (sol.phase1_infeasibility > feas_tol)
    throw LpFailure("solve_lp: infeasible (phase-1 residual " +
                    std::to_string(sol.phase1_infeasibility) + ")");
  tab.drive_out_artificials();

  if (!tab.optimize(m + 1, n, &sol.iterations))
    throw LpFailure("solve_lp: problem is unbounded");

  sol.z = tab.solution();
  sol.objective = lp.c.dot(sol.z);
  return sol;
}

LpBuilder::LpBuilder(int n_vars) : n_vars_(n_vars) {}

void LpBuilder::add_eq(const Eigen::VectorXd& row, double rhs) {
  rows_.push_back({row, rhs, 0});
}
void LpBuilder::add_ge(const Eigen::VectorXd& row, double rhs) {
  rows_.push_back({row, rhs, 1});
}
void LpBuilder::add_le(const Eigen::VectorXd& row, double rhs) {
  rows_.push_back({row, rhs, -1});
}

LpProblem LpBuilder::build(const Eigen::VectorXd& cost) const {
  const int m = static_cast<int>(rows_.size());
  int n_slack = 0;
  for (const Row& r : rows_)
    if (r.kind != 0) ++n_slack;

  LpProblem lp;
  lp.A.setZero(m, n_vars_ + n_slack);
  lp.b.resize(m);
  lp.c.setZero(n_vars_ + n_slack);
  lp.c.head(n_vars_) = cost;

  int slack = n_vars_;
  for (int i = 0; i < m; ++i) {
    lp.A.row(i).head(n_vars_) = rows_[i].a.transpose();
    lp.b[i] = rows_[i].rhs;
    if (rows_[i].kind == 1)
      lp.A(i, slack++) = -1.0;  // surplus
    else if (rows_[i].kind == -1)
      lp.A(i, slack++) = 1.0;  // slack
  }
  return lp;
}

}  // namespace nonlocal
