#include "nonlocal/polytope.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "nonlocal/least_distance.hpp"
#include "nonlocal/simplex.hpp"

namespace nonlocal {

LocalVertexSet enumerate_local_vertices(const Dims& dims) {
  dims.validate();
  double count_f = std::pow(static_cast<double>(dims.na), dims.nx);
  double count_g = std::pow(static_cast<double>(dims.nb), dims.ny);
  if (count_f * count_g > 1e6)
    throw TooLarge("enumerate_local_vertices: " + std::to_string(count_f * count_g) +
                   " vertices exceeds the 1e6 guard");

  const int nf = static_cast<int>(std::llround(count_f));
  const int ng = static_cast<int>(std::llround(count_g));

  LocalVertexSet set;
  set.dims = dims;
  set.vertices.reserve(static_cast<std::size_t>(nf) * ng);

  std::vector<int> f(dims.nx), g(dims.ny);
  for (int fc = 0; fc < nf; ++fc) {
    // Decode so that the digit for x = 1 is the most significant: the
    // enumeration is lexicographic in (f(1), ..., f(nx)).
    int rem = fc;
    for (int x = dims.nx - 1; x >= 0; --x) {
      f[x] = rem % dims.na;
      rem /= dims.na;
    }
    for (int gc = 0; gc < ng; ++gc) {
      rem = gc;
      for (int y = dims.ny - 1; y >= 0; --y) {
        g[y] = rem % dims.nb;
        rem /= dims.nb;
      }
      set.vertices.push_back(BehaviorTable::deterministic(dims, f, g));
    }
  }
  return set;
}

PolytopeResult distance_to_local_polytope(const BehaviorTable& p,
                                          double feas_tol) {
  const Dims& d = p.dims();
  const LocalVertexSet set = enumerate_local_vertices(d);
  const int nv = static_cast<int>(set.vertices.size());
  const int ne = d.entries();

  // Variables: [w (nv), t (ne)]; minimize sum t subject to
  //   sum_i w_i v_ie - t_e <= p_e,  sum_i w_i v_ie + t_e >= p_e,  sum w = 1.
  LpBuilder builder(nv + ne);
  for (int e = 0; e < ne; ++e) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(nv + ne);
    for (int i = 0; i < nv; ++i) row[i] = set.vertices[i].entries()[e];
    row[nv + e] = -1.0;
    builder.add_le(row, p.entries()[e]);
    row[nv + e] = 1.0;
    builder.add_ge(row, p.entries()[e]);
  }
  Eigen::VectorXd ones = Eigen::VectorXd::Zero(nv + ne);
  ones.head(nv).setOnes();
  builder.add_eq(ones, 1.0);

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(nv + ne);
  cost.tail(ne).setOnes();
  const LpSolution sol = solve_lp(builder.build(cost), feas_tol);

  std::vector<double> weights(nv);
  double wsum = 0.0;
  for (int i = 0; i < nv; ++i) {
    weights[i] = std::max(sol.z[i], 0.0);
    wsum += weights[i];
  }
  for (double& w : weights) w /= wsum;

  std::vector<double> nearest(ne, 0.0);
  for (int i = 0; i < nv; ++i) {
    if (weights[i] == 0.0) continue;
    for (int e = 0; e < ne; ++e)
      nearest[e] += weights[i] * set.vertices[i].entries()[e];
  }

  PolytopeResult result{0.0, BehaviorTable(d, std::move(nearest)), std::move(weights)};
  result.distance = l1_distance(p, result.nearest);
  return result;
}

namespace {

// Equality rows defining the non-signaling polytope over the q variables:
// per-block normalization plus marginal equality across far-side settings.
void ns_equalities(const Dims& d, Eigen::MatrixXd* A, Eigen::VectorXd* b) {
  const int ne = d.entries();
  const int rows = d.nx * d.ny + d.nx * d.na * (d.ny - 1) + d.ny * d.nb * (d.nx - 1);
  A->setZero(rows, ne);
  b->setZero(rows);
  int r = 0;
  for (int x = 0; x < d.nx; ++x)
    for (int y = 0; y < d.ny; ++y) {
      for (int a = 0; a < d.na; ++a)
        for (int bo = 0; bo < d.nb; ++bo) (*A)(r, d.index(x, y, a, bo)) = 1.0;
      (*b)[r++] = 1.0;
    }
  for (int x = 0; x < d.nx; ++x)
    for (int a = 0; a < d.na; ++a)
      for (int y = 1; y < d.ny; ++y) {
        for (int bo = 0; bo < d.nb; ++bo) {
          (*A)(r, d.index(x, y, a, bo)) += 1.0;
          (*A)(r, d.index(x, 0, a, bo)) -= 1.0;
        }
        ++r;
      }
  for (int y = 0; y < d.ny; ++y)
    for (int bo = 0; bo < d.nb; ++bo)
      for (int x = 1; x < d.nx; ++x) {
        for (int a = 0; a < d.na; ++a) {
          (*A)(r, d.index(x, y, a, bo)) += 1.0;
          (*A)(r, d.index(0, y, a, bo)) -= 1.0;
        }
        ++r;
      }
}

}  // namespace

PolytopeResult project_nonsignaling(const BehaviorTable& p,
                                    double feas_tol) {
  // Effectively non-signaling inputs are their own projection; this makes
  // the projection an exact fixed point on its own outputs.
  if (signaling_deficit(p) <= kNsFixedPointTol)
    return PolytopeResult{0.0, p, {}};

  const Dims& d = p.dims();
  const int ne = d.entries();

  Eigen::MatrixXd Ans;
  Eigen::VectorXd bns;
  ns_equalities(d, &Ans, &bns);
  const int nrows = static_cast<int>(Ans.rows());

  // Stage 1: minimize the L1 distance. Variables [q (ne), t (ne)].
  LpBuilder builder(2 * ne);
  for (int r = 0; r < nrows; ++r) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(2 * ne);
    row.head(ne) = Ans.row(r).transpose();
    builder.add_eq(row, bns[r]);
  }
  for (int e = 0; e < ne; ++e) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(2 * ne);
    row[e] = 1.0;
    row[ne + e] = -1.0;
    builder.add_le(row, p.entries()[e]);
    row[ne + e] = 1.0;
    builder.add_ge(row, p.entries()[e]);
  }
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(2 * ne);
  cost.tail(ne).setOnes();
  const LpSolution sol = solve_lp(builder.build(cost), feas_tol);
  const double dstar = sol.objective;

  // Stage 2 tie-break: among L1-minimizers pick the least-squares point.
  // Minimizing ||q - p||^2 + ||t||^2 has the same argmin in q because the
  // optimal t equals |q - p| componentwise.
  Eigen::VectorXd q1 = sol.z.head(2 * ne);
  for (int e = 0; e < ne; ++e)
    q1[ne + e] = std::abs(q1[e] - p.entries()[e]);

  Eigen::VectorXd target = Eigen::VectorXd::Zero(2 * ne);
  for (int e = 0; e < ne; ++e) target[e] = p.entries()[e];

  Eigen::MatrixXd Aeq = Eigen::MatrixXd::Zero(nrows, 2 * ne);
  Aeq.leftCols(ne) = Ans;

  // Inequalities: t_e >= +-(q_e - p_e), q >= 0, sum t <= dstar + slack.
  const double tie_slack = 1e-10;
  Eigen::MatrixXd Ain = Eigen::MatrixXd::Zero(3 * ne + 1, 2 * ne);
  Eigen::VectorXd bin = Eigen::VectorXd::Zero(3 * ne + 1);
  for (int e = 0; e < ne; ++e) {
    Ain(e, e) = -1.0;
    Ain(e, ne + e) = 1.0;
    bin[e] = -p.entries()[e];  // t - q >= -p
    Ain(ne + e, e) = 1.0;
    Ain(ne + e, ne + e) = 1.0;
    bin[ne + e] = p.entries()[e];  // t + q >= p
    Ain(2 * ne + e, e) = 1.0;
    bin[2 * ne + e] = 0.0;  // q >= 0
  }
  for (int e = 0; e < ne; ++e) Ain(3 * ne, ne + e) = -1.0;
  bin[3 * ne] = -(dstar + tie_slack);  // sum t <= dstar + slack

  std::vector<double> q_out(ne);
  try {
    Eigen::VectorXd z2 = least_distance(target, Aeq, bns, Ain, bin, q1);
    for (int e = 0; e < ne; ++e) q_out[e] = std::max(z2[e], 0.0);
  } catch (const LpFailure&) {
    // Fall back to the stage-1 vertex (still an L1-minimizer).
    for (int e = 0; e < ne; ++e) q_out[e] = std::max(q1[e], 0.0);
  }

  PolytopeResult result{0.0, BehaviorTable(d, std::move(q_out)), {}};
  result.distance = l1_distance(p, result.nearest);
  return result;
}

bool is_local(const BehaviorTable& p, double tol, double feas_tol) {
  if (tol < 0.0) throw InvalidParameter("is_local: tol must be >= 0");
  return distance_to_local_polytope(p, feas_tol).distance <= tol;
}

}  // namespace nonlocal
