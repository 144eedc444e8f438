#pragma once

#include <cstdint>
#include <random>

namespace nonlocal {

/// Deterministic random source. All distributions are implemented here
/// rather than with std:: distributions, whose outputs are
/// implementation-defined; identical seeds give identical streams on any
/// platform with IEEE doubles.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal (Box-Muller).
  double gaussian();

  /// Poisson with the given mean (Knuth product method below 30, PTRS
  /// transformed rejection above).
  std::int64_t poisson(double mean);

  /// Derive a stream seed from a base seed and a stream index (splitmix64),
  /// so that indexed substreams are independent and order-insensitive.
  static std::uint64_t substream(std::uint64_t seed, std::uint64_t index);

private:
  std::mt19937_64 gen_;
};

}  // namespace nonlocal
