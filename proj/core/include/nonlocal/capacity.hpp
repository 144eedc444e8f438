#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nonlocal/behavior.hpp"

namespace nonlocal {

/// Floor applied to probabilities inside logarithms (safe-log smoothing).
inline constexpr double kLogFloor = 1e-12;

/// Linear description of the extension polytope V: variables rho(a, bvec | x)
/// with the (a, b_m) marginals pinned to P(ab|x, y=m) for every Bob setting m.
///
/// Variable layout: index = (x * na + a) * nb^M + code(bvec), where
/// code(bvec) = sum_m bvec[m] * nb^m (m = 0..M-1, little-endian).
struct VPolytope {
  Dims dims;
  int n_vars = 0;      // nx * na * nb^M
  int n_bvec = 0;      // nb^M
  Eigen::MatrixXd A;   // equality rows: marginal constraints
  Eigen::VectorXd b;

  int var_index(int x, int a, int bcode) const {
    return (x * dims.na + a) * n_bvec + bcode;
  }
  int bvec_component(int bcode, int m) const;
};

/// Build the marginal-equality description of V. Throws SignalingInput if
/// signaling_deficit(p) > 1e-6 and InfeasibleV if an LP feasibility check
/// finds V empty.
VPolytope build_v_polytope(const BehaviorTable& p);

/// Deterministic feasible point of V for a non-signaling behavior:
/// rho(a, bvec | x) = P(a, b_1 | x, 1) * prod_{m>=2} P(b_m | a, x, m).
Eigen::VectorXd conditional_coupling(const BehaviorTable& p, const VPolytope& v);

struct ChannelCapacityResult {
  double capacity_bits = 0.0;    // certified lower bound (achievable rate)
  double upper_bound = 0.0;      // certified upper bound
  Eigen::VectorXd input_dist;    // achieving input distribution
  int iterations = 0;
};

/// Blahut-Arimoto capacity of the channel given by row-stochastic q where
/// q(x, z) = W(z | x). Stops when the standard per-iteration bounds close
/// within tol bits. Throws NonConvergence (carrying both bounds) at the
/// iteration cap.
ChannelCapacityResult channel_capacity(const Eigen::MatrixXd& q, double tol);

/// Conditional distribution rho(a, bvec | x) of the extension polytope.
struct ExtendedDistribution {
  Dims dims;
  int n_bvec = 0;
  std::vector<double> rho;  // layout as in VPolytope
};

struct CapacityCertificate {
  double value = 0.0;              // C_nl^asym in bits
  ExtendedDistribution rho;        // minimizer
  std::vector<double> input_dist;  // inner capacity-achieving distribution
  double gap = 0.0;                // upper bound on distance from optimum
  int iterations = 0;
};

/// Asymptotic non-local capacity: minimize the capacity of the marginal
/// channel rho(bvec|x) over V by Frank-Wolfe with an LP oracle; the reported
/// gap combines the best Frank-Wolfe lower bound with the inner
/// Blahut-Arimoto tolerance. Throws SignalingInput / InfeasibleV; on hitting
/// the iteration cap the certificate is still returned with its honest gap.
CapacityCertificate nonlocal_capacity_asym(const BehaviorTable& p, double tol);

}  // namespace nonlocal
