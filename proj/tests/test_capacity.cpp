#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nonlocal/bell.hpp"
#include "nonlocal/capacity.hpp"
#include "nonlocal/polytope.hpp"
#include "nonlocal/quantum.hpp"
#include "nonlocal/rng.hpp"
#include "nonlocal/simplex.hpp"

using namespace nonlocal;

namespace {

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

BehaviorTable random_local(Rng& rng, const LocalVertexSet& set) {
  std::vector<double> w(set.vertices.size());
  double s = 0.0;
  for (auto& wi : w) {
    wi = -std::log(1.0 - rng.uniform());
    s += wi;
  }
  std::vector<double> e(set.dims.entries(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int k = 0; k < set.dims.entries(); ++k)
      e[k] += w[i] / s * set.vertices[i].entries()[k];
  return BehaviorTable(set.dims, std::move(e));
}

// Channel capacity of the marginal of a V-point, via Blahut-Arimoto.
double point_capacity(const Eigen::VectorXd& rho, const VPolytope& v,
                      double tol) {
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(v.dims.nx, v.n_bvec);
  for (int x = 0; x < v.dims.nx; ++x)
    for (int a = 0; a < v.dims.na; ++a)
      for (int code = 0; code < v.n_bvec; ++code)
        W(x, code) += rho[v.var_index(x, a, code)];
  return channel_capacity(W, tol).capacity_bits;
}

}  // namespace

TEST_CASE("V polytope dimensions for the qutrit setup") {
  const VPolytope v = build_v_polytope(BehaviorTable::uniform({2, 2, 3, 3}));
  CHECK(v.n_vars == 54);   // 2 * 3 * 9
  CHECK(v.A.rows() == 36); // 2 * 2 * 3 * 3
  CHECK(v.n_bvec == 9);
}

TEST_CASE("V rejects signaling inputs") {
  Dims d{1, 2, 2, 2};
  std::vector<double> e(d.entries(), 0.0);
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 2; ++b) e[d.index(0, y, y, b)] = 0.5;
  CHECK_THROWS_AS(build_v_polytope(BehaviorTable(d, e)), SignalingInput);
}

TEST_CASE("conditional coupling is feasible") {
  for (const BehaviorTable& p :
       {born_behavior(1.0, 1.0), born_behavior(0.5, 0.807),
        BehaviorTable::uniform({2, 2, 3, 3}), BehaviorTable::pr_box()}) {
    const VPolytope v = build_v_polytope(p);
    const Eigen::VectorXd rho = conditional_coupling(p, v);
    CHECK(rho.minCoeff() >= 0.0);
    CHECK((v.A * rho - v.b).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("product behaviors extend to a product coupling") {
  Dims d{2, 2, 3, 3};
  std::vector<double> e(d.entries());
  const double pa[2][3] = {{0.5, 0.3, 0.2}, {0.1, 0.6, 0.3}};
  const double pb[2][3] = {{0.2, 0.2, 0.6}, {0.4, 0.4, 0.2}};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) e[d.index(x, y, a, b)] = pa[x][a] * pb[y][b];
  const BehaviorTable p(d, e);
  const VPolytope v = build_v_polytope(p);
  const Eigen::VectorXd rho = conditional_coupling(p, v);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 3; ++a)
      for (int code = 0; code < v.n_bvec; ++code) {
        const double want = pa[x][a] * pb[0][v.bvec_component(code, 0)] *
                            pb[1][v.bvec_component(code, 1)];
        CHECK(rho[v.var_index(x, a, code)] == doctest::Approx(want).epsilon(1e-12));
      }
  // A product behavior needs no communication.
  CHECK(nonlocal_capacity_asym(p, 1e-4).value <= 1e-4);
}

TEST_CASE("Blahut-Arimoto on reference channels") {
  Eigen::MatrixXd identity(2, 2);
  identity << 1.0, 0.0, 0.0, 1.0;
  CHECK(channel_capacity(identity, 1e-9).capacity_bits ==
        doctest::Approx(1.0).epsilon(1e-9));

  Eigen::MatrixXd coin(2, 2);
  coin << 0.5, 0.5, 0.5, 0.5;
  CHECK(channel_capacity(coin, 1e-9).capacity_bits <= 1e-9);

  Eigen::MatrixXd bsc(2, 2);
  bsc << 0.89, 0.11, 0.11, 0.89;
  const double want = 1.0 - binary_entropy(0.11);
  CHECK(channel_capacity(bsc, 1e-8).capacity_bits ==
        doctest::Approx(want).epsilon(1e-6));
  CHECK(std::abs(want - 0.5001) <= 1e-4);

  CHECK_THROWS_AS(channel_capacity(bsc, 0.0), InvalidParameter);
  Eigen::MatrixXd bad(1, 2);
  bad << 0.5, 0.6;
  CHECK_THROWS_AS(channel_capacity(bad, 1e-6), InvalidParameter);
}

TEST_CASE("BSC capacity sweep against the closed form") {
  for (int i = 0; i <= 10; ++i) {
    const double f = 0.05 * i;
    Eigen::MatrixXd bsc(2, 2);
    bsc << 1.0 - f, f, f, 1.0 - f;
    const ChannelCapacityResult res = channel_capacity(bsc, 1e-7);
    CHECK(res.capacity_bits ==
          doctest::Approx(1.0 - binary_entropy(f)).epsilon(1e-6));
    CHECK(res.upper_bound >= res.capacity_bits - 1e-12);
  }
}

TEST_CASE("certificate invariants on the qutrit behavior") {
  const BehaviorTable p = born_behavior(1.0, 1.0);
  const CapacityCertificate cert = nonlocal_capacity_asym(p, 1e-4);
  CHECK(cert.value >= 0.0);
  CHECK(cert.gap >= 0.0);
  CHECK(cert.gap <= 1e-4);

  // rho lies in V within 1e-8.
  const VPolytope v = build_v_polytope(p);
  Eigen::VectorXd rho(v.n_vars);
  for (int i = 0; i < v.n_vars; ++i) rho[i] = cert.rho.rho[i];
  CHECK((v.A * rho - v.b).lpNorm<Eigen::Infinity>() <= 1e-8);
  CHECK(rho.minCoeff() >= -1e-12);

  // Re-evaluating the marginal channel reproduces the value within the gap.
  CHECK(std::abs(point_capacity(rho, v, 1e-6) - cert.value) <= cert.gap);

  // Upper-bound consistency against an independently constructed point.
  const double coupling_cap =
      point_capacity(conditional_coupling(p, v), v, 1e-6);
  CHECK(cert.value <= coupling_cap + 1e-9);
}

TEST_CASE("PR box: the explicit one-bit point is the unique extension") {
  const BehaviorTable pr = BehaviorTable::pr_box();
  const VPolytope v = build_v_polytope(pr);
  // rho(a, b1, b2 | x) = 1/2 [b1 = a][b2 = a xor x'].
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(v.n_vars);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const int code = (a) + 2 * (a ^ x);  // b1 + nb*b2
      rho[v.var_index(x, a, code)] = 0.5;
    }
  CHECK((v.A * rho - v.b).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK(point_capacity(rho, v, 1e-9) == doctest::Approx(1.0).epsilon(1e-9));

  const CapacityCertificate cert = nonlocal_capacity_asym(pr, 1e-4);
  CHECK(cert.value <= 1.0 + 1e-6);
  CHECK(cert.value > 0.0);
  CHECK(cert.gap <= 1e-4);
}

TEST_CASE("capacity of the channel is convex along V segments") {
  const BehaviorTable p = born_behavior(0.8, 0.9);
  const VPolytope v = build_v_polytope(p);
  const Eigen::VectorXd rho1 = conditional_coupling(p, v);
  Rng rng(31415);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd c(v.n_vars);
    for (int i = 0; i < v.n_vars; ++i) c[i] = rng.uniform() * 2.0 - 1.0;
    const Eigen::VectorXd rho2 =
        solve_lp(LpProblem{v.A, v.b, c}, 1e-6).z.head(v.n_vars);
    const double mu = rng.uniform();
    const Eigen::VectorXd rmix = mu * rho1 + (1.0 - mu) * rho2;
    const double lhs = point_capacity(rmix, v, 1e-9);
    const double rhs = mu * point_capacity(rho1, v, 1e-9) +
                       (1.0 - mu) * point_capacity(rho2, v, 1e-9);
    CHECK(lhs <= rhs + 1e-8);
  }
}

TEST_CASE("local behaviors need no communication") {
  const LocalVertexSet set = enumerate_local_vertices({2, 2, 3, 3});
  for (const BehaviorTable& v : set.vertices)
    CHECK(nonlocal_capacity_asym(v, 1e-4).value <= 1e-4);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(nonlocal_capacity_asym(random_local(rng, set), 1e-4).value <= 1e-4);
}

TEST_CASE("capacity shrinks toward the uniform point") {
  const BehaviorTable p = born_behavior(1.0, 1.0);
  const BehaviorTable u = BehaviorTable::uniform(p.dims());
  double prev = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const double mu = i / 10.0;
    const double value = nonlocal_capacity_asym(mix(p, u, mu), 1e-3).value;
    CHECK(value >= prev - 2e-3);
    prev = value;
  }
}

TEST_CASE("non-monotonicity in the entanglement parameter") {
  const CapacityCertificate at_max = nonlocal_capacity_asym(born_behavior(0.792, 1.0), 1e-4);
  const CapacityCertificate at_one = nonlocal_capacity_asym(born_behavior(1.0, 1.0), 1e-4);
  CHECK(at_max.value - at_one.value > 2.0 * (at_max.gap + at_one.gap));
}

TEST_CASE("tolerance validation") {
  CHECK_THROWS_AS(nonlocal_capacity_asym(BehaviorTable::pr_box(), 0.0),
                  InvalidParameter);
}
