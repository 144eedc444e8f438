#include "nonlocal/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nonlocal/least_distance.hpp"
#include "nonlocal/simplex.hpp"

namespace nonlocal {

namespace {

constexpr double kSignalingGuard = 1e-6;  // hard rejection threshold
constexpr double kVFeasTol = 1e-6;        // phase-1 acceptance for V rows
constexpr int kBaIterationCap = 500000;
constexpr int kFwIterationCap = 3000;

double log2_floored(double num, double den) {
  return std::log2(std::max(num, kLogFloor) / std::max(den, kLogFloor));
}

}  // namespace

int VPolytope::bvec_component(int bcode, int m) const {
  for (int i = 0; i < m; ++i) bcode /= dims.nb;
  return bcode % dims.nb;
}

VPolytope build_v_polytope(const BehaviorTable& p) {
  const double deficit = signaling_deficit(p);
  if (deficit > kSignalingGuard)
    throw SignalingInput("build_v_polytope: signaling deficit " +
                         std::to_string(deficit) +
                         " exceeds 1e-6; project onto the non-signaling "
                         "polytope first");
  const Dims& d = p.dims();
  const int M = d.ny;

  VPolytope v;
  v.dims = d;
  v.n_bvec = 1;
  for (int m = 0; m < M; ++m) v.n_bvec *= d.nb;
  v.n_vars = d.nx * d.na * v.n_bvec;

  const int rows = d.nx * M * d.na * d.nb;
  v.A.setZero(rows, v.n_vars);
  v.b.resize(rows);
  int r = 0;
  for (int x = 0; x < d.nx; ++x)
    for (int m = 0; m < M; ++m)
      for (int a = 0; a < d.na; ++a)
        for (int bo = 0; bo < d.nb; ++bo) {
          for (int code = 0; code < v.n_bvec; ++code)
            if (v.bvec_component(code, m) == bo)
              v.A(r, v.var_index(x, a, code)) = 1.0;
          v.b[r++] = p(x, m, a, bo);
        }

  // LP feasibility check (phase 1 only: zero objective).
  LpProblem feas{v.A, v.b, Eigen::VectorXd::Zero(v.n_vars)};
  try {
    solve_lp(feas, kVFeasTol);
  } catch (const LpFailure& e) {
    throw InfeasibleV(std::string("build_v_polytope: V is empty (") + e.what() +
                      ")");
  }
  return v;
}

Eigen::VectorXd conditional_coupling(const BehaviorTable& p, const VPolytope& v) {
  const Dims& d = p.dims();
  const int M = d.ny;
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(v.n_vars);
  for (int x = 0; x < d.nx; ++x) {
    // Alice marginal per setting m (equal across m for non-signaling p).
    std::vector<std::vector<double>> pa(M, std::vector<double>(d.na, 0.0));
    for (int m = 0; m < M; ++m)
      for (int a = 0; a < d.na; ++a)
        for (int bo = 0; bo < d.nb; ++bo) pa[m][a] += p(x, m, a, bo);

    for (int a = 0; a < d.na; ++a)
      for (int code = 0; code < v.n_bvec; ++code) {
        double val = p(x, 0, a, v.bvec_component(code, 0));
        for (int m = 1; m < M; ++m) {
          const double cond = pa[m][a] > 1e-14
                                  ? p(x, m, a, v.bvec_component(code, m)) / pa[m][a]
                                  : 1.0 / d.nb;
          val *= cond;
        }
        rho[v.var_index(x, a, code)] = val;
      }
  }
  return rho;
}

ChannelCapacityResult channel_capacity(const Eigen::MatrixXd& q, double tol) {
  if (tol <= 0.0) throw InvalidParameter("channel_capacity: tol must be > 0");
  const int nx = static_cast<int>(q.rows());
  const int nz = static_cast<int>(q.cols());
  if (nx < 1 || nz < 1)
    throw InvalidParameter("channel_capacity: empty channel");

  Eigen::MatrixXd W = q.cwiseMax(0.0);
  for (int x = 0; x < nx; ++x) {
    const double s = W.row(x).sum();
    if (std::abs(s - 1.0) > 1e-6)
      throw InvalidParameter("channel_capacity: row " + std::to_string(x) +
                             " sums to " + std::to_string(s));
    W.row(x) /= s;
  }

  ChannelCapacityResult res;
  Eigen::VectorXd r = Eigen::VectorXd::Constant(nx, 1.0 / nx);
  Eigen::VectorXd divergence(nx);
  for (int it = 0; it < kBaIterationCap; ++it) {
    const Eigen::VectorXd s = W.transpose() * r;
    for (int x = 0; x < nx; ++x) {
      double dx = 0.0;
      for (int z = 0; z < nz; ++z)
        if (W(x, z) > 0.0) dx += W(x, z) * log2_floored(W(x, z), s[z]);
      divergence[x] = dx;
    }
    const double upper = divergence.maxCoeff();
    const double lower = r.dot(divergence);
    if (upper - lower <= tol) {
      res.capacity_bits = std::max(lower, 0.0);
      res.upper_bound = upper;
      res.input_dist = r;
      res.iterations = it + 1;
      return res;
    }
    for (int x = 0; x < nx; ++x) r[x] *= std::exp2(divergence[x]);
    r /= r.sum();
  }
  throw NonConvergence("channel_capacity: Blahut-Arimoto bounds did not close",
                       0.0, divergence.maxCoeff());
}

namespace {

Eigen::MatrixXd marginal_channel(const Eigen::VectorXd& rho, const VPolytope& v) {
  const Dims& d = v.dims;
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(d.nx, v.n_bvec);
  for (int x = 0; x < d.nx; ++x)
    for (int a = 0; a < d.na; ++a)
      for (int code = 0; code < v.n_bvec; ++code)
        W(x, code) += rho[v.var_index(x, a, code)];
  W = W.cwiseMax(0.0);
  for (int x = 0; x < d.nx; ++x) W.row(x) /= W.row(x).sum();
  return W;
}

bool is_product_behavior(const BehaviorTable& p) {
  const Dims& d = p.dims();
  for (int x = 0; x < d.nx; ++x)
    for (int y = 0; y < d.ny; ++y) {
      std::vector<double> pa(d.na, 0.0), pb(d.nb, 0.0);
      for (int a = 0; a < d.na; ++a)
        for (int b = 0; b < d.nb; ++b) {
          pa[a] += p(x, y, a, b);
          pb[b] += p(x, y, a, b);
        }
      for (int a = 0; a < d.na; ++a)
        for (int b = 0; b < d.nb; ++b)
          if (std::abs(p(x, y, a, b) - pa[a] * pb[b]) > 1e-12) return false;
    }
  return true;
}

// Deterministic start per the initialization policy: the product coupling
// when p factorizes, otherwise the least-squares-closest-to-uniform point
// of V (computed from the coupling as a feasible start).
Eigen::VectorXd initial_point(const BehaviorTable& p, const VPolytope& v) {
  Eigen::VectorXd coupling = conditional_coupling(p, v);
  if (is_product_behavior(p)) return coupling;
  const Eigen::VectorXd target =
      Eigen::VectorXd::Constant(v.n_vars, 1.0 / (v.dims.na * v.n_bvec));
  Eigen::MatrixXd Ain = Eigen::MatrixXd::Identity(v.n_vars, v.n_vars);
  Eigen::VectorXd bin = Eigen::VectorXd::Zero(v.n_vars);
  try {
    return least_distance(target, v.A, v.b, Ain, bin, coupling);
  } catch (const LpFailure&) {
    return coupling;
  }
}

}  // namespace

CapacityCertificate nonlocal_capacity_asym(const BehaviorTable& p, double tol) {
  if (tol <= 0.0)
    throw InvalidParameter("nonlocal_capacity_asym: tol must be > 0");
  const VPolytope v = build_v_polytope(p);
  const Dims& d = p.dims();
  const double inner_tol = tol / 10.0;

  Eigen::VectorXd rho = initial_point(p, v);
  Eigen::VectorXd rho_best = rho;
  double f_best = std::numeric_limits<double>::infinity();
  double best_lb = 0.0;  // the capacity functional is nonnegative
  Eigen::VectorXd r_best;
  int iterations = 0;

  auto certificate = [&](double gap) {
    CapacityCertificate cert;
    cert.value = f_best;
    cert.gap = gap;
    cert.iterations = iterations;
    cert.rho.dims = d;
    cert.rho.n_bvec = v.n_bvec;
    cert.rho.rho.assign(rho_best.data(), rho_best.data() + v.n_vars);
    cert.input_dist.assign(r_best.data(), r_best.data() + r_best.size());
    return cert;
  };

  for (int k = 0; k < kFwIterationCap; ++k) {
    iterations = k + 1;
    const Eigen::MatrixXd W = marginal_channel(rho, v);
    const ChannelCapacityResult inner = channel_capacity(W, inner_tol);
    if (inner.capacity_bits < f_best) {
      f_best = inner.capacity_bits;
      rho_best = rho;
      r_best = inner.input_dist;
    }

    // Envelope gradient of the capacity at the inner-optimal input.
    const Eigen::VectorXd s = W.transpose() * inner.input_dist;
    Eigen::VectorXd grad(v.n_vars);
    for (int x = 0; x < d.nx; ++x)
      for (int code = 0; code < v.n_bvec; ++code) {
        const double g = inner.input_dist[x] * log2_floored(W(x, code), s[code]);
        for (int a = 0; a < d.na; ++a) grad[v.var_index(x, a, code)] = g;
      }

    const LpSolution lp = solve_lp(LpProblem{v.A, v.b, grad}, kVFeasTol);
    const Eigen::VectorXd vertex = lp.z.head(v.n_vars);
    const double fw_gap = grad.dot(rho - vertex);
    best_lb = std::max(best_lb, inner.capacity_bits - fw_gap);

    const double gap = std::max(0.0, f_best - best_lb) + inner_tol;
    if (gap <= tol) return certificate(gap);

    // Exact line search along the Frank-Wolfe segment (capacity is convex
    // along it); golden section to fine precision so that landings on the
    // optimal face are second-order accurate.
    const Eigen::MatrixXd Wv = marginal_channel(vertex, v);
    auto phi = [&](double mu) {
      const Eigen::MatrixXd Wm = (1.0 - mu) * W + mu * Wv;
      return channel_capacity(Wm, inner_tol).capacity_bits;
    };
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = phi(x1), f2 = phi(x2);
    for (int ls = 0; ls < 40; ++ls) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = phi(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = phi(x2);
      }
    }
    double mu = 0.5 * (lo + hi);
    if (phi(1.0) <= std::min(f1, f2)) mu = 1.0;  // vertex jump
    if (mu <= 0.0) mu = 1.0 / (k + 2.0);         // safeguard: keep moving
    rho = (1.0 - mu) * rho + mu * vertex;
  }

  const double gap = std::max(0.0, f_best - best_lb) + inner_tol;
  return certificate(gap);  // honest gap; caller decides how to react
}

}  // namespace nonlocal
