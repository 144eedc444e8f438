#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nonlocal/errors.hpp"

namespace nonlocal {

/// Numbers of settings and outcomes of a bipartite box.
/// nx, ny: Alice/Bob setting counts; na, nb: Alice/Bob outcome counts.
struct Dims {
  int nx = 0;
  int ny = 0;
  int na = 0;
  int nb = 0;

  bool operator==(const Dims&) const = default;

  int entries() const { return nx * ny * na * nb; }

  /// Row-major (x, y, a, b) index, all arguments 0-based.
  int index(int x, int y, int a, int b) const {
    return ((x * ny + y) * na + a) * nb + b;
  }

  /// Throws InvalidParameter unless nx,ny >= 1 and na,nb >= 2.
  void validate() const;
};

/// Conditional distribution P(ab|xy) over finite setting/outcome ranges.
/// Entries are stored densely in row-major (x, y, a, b) order; every (x, y)
/// block sums to 1 within kNormTol. Immutable after construction.
class BehaviorTable {
public:
  static constexpr double kNormTol = 1e-12;

  BehaviorTable(Dims dims, std::vector<double> entries);

  const Dims& dims() const { return dims_; }
  const std::vector<double>& entries() const { return entries_; }

  double operator()(int x, int y, int a, int b) const {
    return entries_[dims_.index(x, y, a, b)];
  }

  /// The maximally mixed behavior: every entry 1/(na*nb).
  static BehaviorTable uniform(Dims dims);

  /// Local deterministic box a = f(x), b = g(y); f and g are 0-based outcome
  /// choices indexed by setting.
  static BehaviorTable deterministic(Dims dims, const std::vector<int>& f,
                                     const std::vector<int>& g);

  /// The PR box on dims (2,2,2,2): a xor b = x'y' with 0-indexed settings.
  static BehaviorTable pr_box();

private:
  Dims dims_;
  std::vector<double> entries_;
};

/// Raw per-setting coincidence counts with optional background (already
/// rescaled to the acquisition window), indexed like BehaviorTable entries.
struct CountsRecord {
  Dims dims;
  std::vector<std::int64_t> counts;
  std::optional<std::vector<double>> background;
};

/// Background-subtract (clamping negatives to 0) and normalize each (x,y)
/// block. Throws ZeroBlock if a block has no signal, ShapeMismatch if the
/// arrays do not match dims.
BehaviorTable normalize_counts(const CountsRecord& c);

/// Largest total-variation distance, over both parties, between single-party
/// marginals induced by different far-side settings. Zero iff non-signaling.
double signaling_deficit(const BehaviorTable& p);

/// Sum of absolute entry-wise differences. Throws ShapeMismatch.
double l1_distance(const BehaviorTable& p, const BehaviorTable& q);

/// Convex mixture mu*p + (1-mu)*q, mu in [0,1].
BehaviorTable mix(const BehaviorTable& p, const BehaviorTable& q, double mu);

}  // namespace nonlocal
