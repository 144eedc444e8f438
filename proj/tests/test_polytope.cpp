#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "nonlocal/bell.hpp"
#include "nonlocal/polytope.hpp"
#include "nonlocal/quantum.hpp"
#include "nonlocal/rng.hpp"

using namespace nonlocal;

namespace {

BehaviorTable random_behavior(Rng& rng, Dims dims) {
  std::vector<double> e(dims.entries());
  for (int x = 0; x < dims.nx; ++x)
    for (int y = 0; y < dims.ny; ++y) {
      double s = 0.0;
      for (int a = 0; a < dims.na; ++a)
        for (int b = 0; b < dims.nb; ++b) {
          const double v = rng.uniform();
          e[dims.index(x, y, a, b)] = v;
          s += v;
        }
      for (int a = 0; a < dims.na; ++a)
        for (int b = 0; b < dims.nb; ++b) e[dims.index(x, y, a, b)] /= s;
    }
  return BehaviorTable(dims, std::move(e));
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

}  // namespace

TEST_CASE("vertex enumeration counts and order") {
  const LocalVertexSet chsh = enumerate_local_vertices({2, 2, 2, 2});
  CHECK(chsh.vertices.size() == 16);
  const LocalVertexSet cglmp = enumerate_local_vertices({2, 2, 3, 3});
  CHECK(cglmp.vertices.size() == 81);

  // First vertex is the all-zeros strategy: entry 1 at (a,b)=(0,0) per block.
  const BehaviorTable& first = chsh.vertices.front();
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(first(x, y, 0, 0) == 1.0);

  // Every vertex factorizes: exactly one unit entry per block, with the
  // outcome choice constant across the far side's settings.
  for (const BehaviorTable& v : cglmp.vertices) {
    std::vector<int> f(2, -1), g(2, -1);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        int hits = 0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            if (v(x, y, a, b) == 1.0) {
              ++hits;
              if (f[x] < 0) f[x] = a;
              if (g[y] < 0) g[y] = b;
              CHECK(f[x] == a);
              CHECK(g[y] == b);
            }
        CHECK(hits == 1);
      }
  }
}

TEST_CASE("vertex enumeration guard") {
  CHECK_THROWS_AS(enumerate_local_vertices({4, 4, 10, 10}), TooLarge);
}

TEST_CASE("local distance of local behaviors is zero") {
  for (const BehaviorTable& v : enumerate_local_vertices({2, 2, 3, 3}).vertices)
    CHECK(distance_to_local_polytope(v).distance <= 1e-9);
  CHECK(distance_to_local_polytope(BehaviorTable::uniform({2, 2, 3, 3})).distance <=
        1e-9);
}

TEST_CASE("PR box distance and the boundary mixture") {
  const PolytopeResult pr = distance_to_local_polytope(BehaviorTable::pr_box());
  CHECK(pr.distance == doctest::Approx(2.0).epsilon(1e-8));

  const BehaviorTable boundary =
      mix(BehaviorTable::pr_box(), BehaviorTable::uniform({2, 2, 2, 2}), 0.5);
  CHECK(distance_to_local_polytope(boundary).distance <= 1e-9);
}

TEST_CASE("polytope result invariants") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const BehaviorTable p = random_behavior(rng, {2, 2, 3, 3});
    const PolytopeResult res = distance_to_local_polytope(p);
    CHECK(res.distance >= 0.0);
    double wsum = 0.0;
    for (double w : res.weights) {
      CHECK(w >= 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(l1_distance(p, res.nearest) == doctest::Approx(res.distance).epsilon(1e-9));
  }
}

TEST_CASE("LP optimum is below every sampled convex combination") {
  Rng rng(123);
  const LocalVertexSet set = enumerate_local_vertices({2, 2, 3, 3});
  for (int trial = 0; trial < 5; ++trial) {
    const BehaviorTable p = random_behavior(rng, {2, 2, 3, 3});
    const double opt = distance_to_local_polytope(p).distance;
    for (int probe = 0; probe < 20; ++probe)
      CHECK(opt <= l1_distance(p, random_local(rng, set)) + 1e-9);
  }
}

TEST_CASE("distance dominates the Bell violation") {
  // Bell functionals with unit coefficients are 1-Lipschitz in L1.
  for (double gamma : {0.3, 0.5, 0.792, 1.0}) {
    const BehaviorTable p = born_behavior(gamma, 1.0);
    const double excess = i3_signed(p) - 2.0;
    if (excess > 0.0)
      CHECK(distance_to_local_polytope(p).distance >= excess - 1e-8);
  }
}

TEST_CASE("for the model family the violated facet is L1-nearest") {
  // Two independent routes to the same number: the Born + functional value
  // against the vertex-enumeration LP. Equality says the CGLMP (or CHSH)
  // facet realizes the L1 distance along these one-parameter families.
  for (double lambda : {1.0, 0.807})
    for (double gamma : {0.1, 0.4, 0.7, 0.792, 1.0, 1.6}) {
      const BehaviorTable p = born_behavior(gamma, lambda);
      const double want = std::max(0.0, i3_signed(p) - 2.0);
      CHECK(distance_to_local_polytope(p).distance ==
            doctest::Approx(want).epsilon(1e-8));
    }
  const BehaviorTable pr = BehaviorTable::pr_box();
  const BehaviorTable u = BehaviorTable::uniform({2, 2, 2, 2});
  for (double mu : {0.3, 0.5, 0.8, 1.0}) {
    const BehaviorTable m = mix(pr, u, mu);
    const double want = std::max(0.0, std::abs(i2_signed(m)) - 2.0);
    CHECK(distance_to_local_polytope(m).distance ==
          doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("projection distance dominates twice the signaling deficit") {
  // Marginals contract under L1, and the two far-side blocks contribute
  // disjointly, so any NS point is at least 2*TV away.
  Rng rng(808);
  for (int trial = 0; trial < 50; ++trial) {
    const BehaviorTable p = random_behavior(rng, {2, 2, 3, 3});
    CHECK(project_nonsignaling(p).distance >=
          2.0 * signaling_deficit(p) - 1e-9);
  }
}

TEST_CASE("non-signaling projection is the identity on NS inputs") {
  const BehaviorTable u = BehaviorTable::uniform({2, 2, 3, 3});
  const PolytopeResult res = project_nonsignaling(u);
  CHECK(res.distance == 0.0);
  CHECK(l1_distance(res.nearest, u) == 0.0);

  const BehaviorTable born = born_behavior(0.61, 0.91);
  CHECK(l1_distance(project_nonsignaling(born).nearest, born) == 0.0);
}

TEST_CASE("projection of the marginal-shift box averages the marginals") {
  // Alice marginal (0.6,0.4) under y=1 and (0.5,0.5) under y=2, Bob uniform:
  // the projection has Alice marginal (0.55,0.45) under both settings and
  // L1 distance 0.2.
  Dims d{1, 2, 2, 2};
  std::vector<double> e(d.entries());
  const double m1[2] = {0.6, 0.4};
  const double m2[2] = {0.5, 0.5};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      e[d.index(0, 0, a, b)] = m1[a] * 0.5;
      e[d.index(0, 1, a, b)] = m2[a] * 0.5;
    }
  const PolytopeResult res = project_nonsignaling(BehaviorTable(d, e));
  CHECK(res.distance == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(signaling_deficit(res.nearest) <= 1e-9);
  for (int y = 0; y < 2; ++y) {
    const double ma0 = res.nearest(0, y, 0, 0) + res.nearest(0, y, 0, 1);
    CHECK(ma0 == doctest::Approx(0.55).epsilon(1e-6));
  }
}

TEST_CASE("projection is idempotent on random behaviors") {
  Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const Dims dims = (trial % 2 == 0) ? Dims{2, 2, 3, 3} : Dims{2, 2, 2, 2};
    const BehaviorTable p = random_behavior(rng, dims);
    const PolytopeResult once = project_nonsignaling(p);
    CHECK(signaling_deficit(once.nearest) <= 1e-9);
    CHECK(l1_distance(p, once.nearest) == doctest::Approx(once.distance).epsilon(1e-9));
    const PolytopeResult twice = project_nonsignaling(once.nearest);
    CHECK(l1_distance(once.nearest, twice.nearest) <= 1e-9);
  }
}

TEST_CASE("local distance shrinks toward the uniform point") {
  for (const BehaviorTable& p :
       {BehaviorTable::pr_box(), born_behavior(1.0, 1.0)}) {
    const BehaviorTable u = BehaviorTable::uniform(p.dims());
    double prev = -1.0;
    for (int i = 0; i <= 10; ++i) {
      const double mu = i / 10.0;  // weight on p
      const double dist = distance_to_local_polytope(mix(p, u, mu)).distance;
      CHECK(dist >= prev - 1e-9);
      prev = dist;
    }
  }
}

TEST_CASE("projection handles extreme signaling boxes") {
  // Deterministic boxes whose outputs track the far side's setting: sparse,
  // maximally signaling inputs exercise the degenerate LP/tie-break path.
  Rng rng(606);
  for (int trial = 0; trial < 30; ++trial) {
    const Dims d{2, 2, 3, 3};
    std::vector<double> e(d.entries(), 0.0);
    for (int x = 0; x < d.nx; ++x)
      for (int y = 0; y < d.ny; ++y) {
        const int a = static_cast<int>(rng.next_u64() % 3) ^ (y & 1);
        const int b = static_cast<int>(rng.next_u64() % 3) ^ (x & 1);
        e[d.index(x, y, a % 3, b % 3)] = 1.0;
      }
    const BehaviorTable p(d, e);
    const PolytopeResult res = project_nonsignaling(p);
    CHECK(signaling_deficit(res.nearest) <= 1e-9);
    CHECK(l1_distance(p, res.nearest) ==
          doctest::Approx(res.distance).epsilon(1e-9));
    const PolytopeResult again = project_nonsignaling(res.nearest);
    CHECK(l1_distance(res.nearest, again.nearest) <= 1e-9);
  }
}

TEST_CASE("is_local") {
  CHECK(is_local(BehaviorTable::uniform({2, 2, 3, 3}), 1e-9));
  CHECK_FALSE(is_local(born_behavior(1.0, 1.0), 1e-6));
  const BehaviorTable small =
      project_nonsignaling(born_behavior(0.1, 0.807)).nearest;
  CHECK(is_local(small, 1e-6));
  CHECK_THROWS_AS(is_local(BehaviorTable::uniform({2, 2, 3, 3}), -1.0),
                  InvalidParameter);
}
