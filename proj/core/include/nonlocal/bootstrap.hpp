#pragma once

#include <cstdint>
#include <string>

#include "nonlocal/behavior.hpp"

namespace nonlocal {

enum class Statistic { I3, DistLocal, Capacity };

/// Center and 2-sigma half-width of a bootstrapped statistic.
struct Interval {
  double center = 0.0;
  double half_width = 0.0;  // 2 * sample standard deviation
  std::string method = "poisson_bootstrap";
};

struct BootstrapOptions {
  double capacity_tol = 1e-4;  // tolerance for the capacity statistic
  double lp_tol = 1e-9;        // LP feasibility tolerance
  int jobs = 1;                // parallel resample workers
};

/// Poisson-resample the raw counts (mean = observed count; background is a
/// known constant), re-run the pipeline for the statistic, and return the
/// resample mean and twice the sample standard deviation. Deterministic
/// given the seed, including under parallel execution. The capacity
/// statistic runs on the NS-projected resample, matching its precondition.
/// Throws NonConvergence if more than 1% of resamples error out.
Interval bootstrap_uncertainty(const CountsRecord& c, Statistic statistic,
                               int n, std::uint64_t seed,
                               const BootstrapOptions& opts = {});

}  // namespace nonlocal
