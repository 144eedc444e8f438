#pragma once

#include <vector>

#include "nonlocal/behavior.hpp"

namespace nonlocal {

/// LP feasibility tolerance used by all polytope computations.
inline constexpr double kLpFeasTol = 1e-9;

/// Inputs whose signaling deficit is below this are treated as already
/// non-signaling by project_nonsignaling (makes the projection an exact
/// fixed point on its own outputs).
inline constexpr double kNsFixedPointTol = 1e-10;

/// All local deterministic strategies a = f(x), b = g(y) for the given dims,
/// in lexicographic order of the (f, g) encodings (f varies slowest, digit
/// for x=1 most significant). Count is na^nx * nb^ny.
struct LocalVertexSet {
  Dims dims;
  std::vector<BehaviorTable> vertices;
};

/// Throws TooLarge when na^nx * nb^ny exceeds 10^6.
LocalVertexSet enumerate_local_vertices(const Dims& dims);

struct PolytopeResult {
  double distance = 0.0;       // L1 units, raw sum over all entries
  BehaviorTable nearest;       // the minimizing point
  std::vector<double> weights; // convex coefficients (local-polytope case)
};

/// L1 distance from p to the local polytope, with the nearest convex
/// combination of deterministic vertices. Throws LpFailure only if the
/// solver breaks down (the problem is always feasible and bounded).
PolytopeResult distance_to_local_polytope(const BehaviorTable& p,
                                          double feas_tol = kLpFeasTol);

/// L1 projection onto the non-signaling polytope. Among L1-minimizers the
/// sum of squared deviations is minimized as a deterministic tie-break.
/// Idempotent; the projection of a non-signaling input is the input itself.
PolytopeResult project_nonsignaling(const BehaviorTable& p,
                                    double feas_tol = kLpFeasTol);

/// distance_to_local_polytope(p).distance <= tol.
bool is_local(const BehaviorTable& p, double tol,
              double feas_tol = kLpFeasTol);

}  // namespace nonlocal
