#pragma once

#include <cstdint>
#include <random>

#include "hypergm/rational.hpp"

namespace hypergm {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Seeded source of small-height rationals. Uses plain modular reduction of
/// the raw engine output so sequences are identical across standard
/// libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = kDefaultSeed) : rng_(seed) {}

  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
  }

  /// p/q with 1 <= |p| <= max_num (sign random) and 1 <= q <= max_den.
  Rat nonzero_rational(long max_num, long max_den) {
    long p = integer(1, max_num);
    if (integer(0, 1)) p = -p;
    return Rat(p, integer(1, max_den));
  }

  /// p/q with |p| <= max_num, 1 <= q <= max_den.
  Rat rational(long max_num, long max_den) { return Rat(integer(-max_num, max_num), integer(1, max_den)); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace hypergm
