#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "nonlocal/behavior.hpp"

namespace nonlocal {

enum class Measure { I3, DistLocal, DistNs, Capacity };

struct SweepConfig {
  std::vector<double> gamma_grid;
  double lambda = 1.0;
  double lp_tol = 1e-9;
  double capacity_tol = 1e-6;
  int n_bootstrap = 0;
  std::uint64_t seed = 0;
  std::set<Measure> measures = {Measure::I3};
  std::int64_t counts_per_block = 1000000;  // intensity for bootstrap counts
  int jobs = 1;
};

/// Plot-ready numeric table: fixed column order, one row per grid point.
struct ResultsTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool operator==(const ResultsTable&) const = default;
};

/// Simulate born_behavior(gamma, lambda) at every grid point and compute the
/// requested measures, raw and NS-projected where applicable. Columns, in
/// order and as requested: gamma, i3, i3_ns, dist_local_raw, dist_local_ns,
/// dist_ns, capacity_ns, plus <measure>_err 2-sigma columns when
/// n_bootstrap > 0. Deterministic given the config, byte-identical output.
ResultsTable run_sweep(const SweepConfig& cfg);

/// Lossless CSV (shortest round-trip double formatting).
std::string table_to_csv(const ResultsTable& table);
ResultsTable table_from_csv(const std::string& text);
void write_csv(const ResultsTable& table, const std::string& path);
ResultsTable read_csv(const std::string& path);

/// JSON provenance sidecar: config, seed, tolerances, tool version.
std::string sweep_provenance(const SweepConfig& cfg);
void write_provenance(const SweepConfig& cfg, const std::string& path);

}  // namespace nonlocal
