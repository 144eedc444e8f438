#include "nonlocal/bootstrap.hpp"

#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "nonlocal/bell.hpp"
#include "nonlocal/capacity.hpp"
#include "nonlocal/polytope.hpp"
#include "nonlocal/rng.hpp"

namespace nonlocal {

namespace {

double run_statistic(const CountsRecord& resample, Statistic statistic,
                     const BootstrapOptions& opts) {
  const BehaviorTable q = normalize_counts(resample);
  switch (statistic) {
    case Statistic::I3:
      return i3(q).value;
    case Statistic::DistLocal:
      return distance_to_local_polytope(q, opts.lp_tol).distance;
    case Statistic::Capacity: {
      const BehaviorTable ns = project_nonsignaling(q, opts.lp_tol).nearest;
      return nonlocal_capacity_asym(ns, opts.capacity_tol).value;
    }
  }
  throw InvalidParameter("bootstrap: unknown statistic");
}

}  // namespace

Interval bootstrap_uncertainty(const CountsRecord& c, Statistic statistic,
                               int n, std::uint64_t seed,
                               const BootstrapOptions& opts) {
  if (n < 1) throw InvalidParameter("bootstrap: n must be >= 1");
  c.dims.validate();
  const int ne = c.dims.entries();

  auto one_resample = [&](int i) -> std::optional<double> {
    Rng rng(Rng::substream(seed, static_cast<std::uint64_t>(i)));
    CountsRecord resample;
    resample.dims = c.dims;
    resample.background = c.background;  // known constant, not resampled
    resample.counts.resize(ne);
    for (int e = 0; e < ne; ++e)
      resample.counts[e] = rng.poisson(static_cast<double>(c.counts[e]));
    try {
      return run_statistic(resample, statistic, opts);
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  std::vector<std::optional<double>> values(n);
  if (opts.jobs > 1) {
    const int workers = std::min(opts.jobs, n);
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (int w = 0; w < workers; ++w)
      futures.push_back(std::async(std::launch::async, [&, w]() {
        for (int i = w; i < n; i += workers) values[i] = one_resample(i);
      }));
    for (auto& f : futures) f.get();
  } else {
    for (int i = 0; i < n; ++i) values[i] = one_resample(i);
  }

  int failures = 0;
  double sum = 0.0;
  int ok = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++ok;
    } else {
      ++failures;
    }
  }
  if (failures * 100 > n)
    throw NonConvergence("bootstrap: " + std::to_string(failures) + " of " +
                         std::to_string(n) + " resamples failed");
  if (ok == 0) throw NonConvergence("bootstrap: no resample succeeded");

  const double mean = sum / ok;
  double ss = 0.0;
  for (const auto& v : values)
    if (v) ss += (*v - mean) * (*v - mean);
  const double sd = ok > 1 ? std::sqrt(ss / (ok - 1)) : 0.0;
  return Interval{mean, 2.0 * sd};
}

}  // namespace nonlocal
