#ifndef SHAPESEP_PRNG_HPP
#define SHAPESEP_PRNG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "shapesep/rational.hpp"

namespace shapesep {

/// Deterministic, platform-independent PRNG (xoshiro256++ seeded by
/// splitmix64). std::uniform_* distributions are implementation-defined, so
/// all sampling goes through this wrapper to keep experiment artifacts
/// byte-identical across toolchains.
class Rng {
public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();

  /// Uniform in [0, n).
  uint64_t next_below(uint64_t n);

  /// Uniform integer in [lo, hi] inclusive.
  int64_t next_int(int64_t lo, int64_t hi);

  /// Uniform in [0, 1) with 53 random bits.
  double next_double();

  /// Uniform in [lo, hi).
  double next_double(double lo, double hi);

  /// Dyadic rational p / 2^bits with p uniform in [lo*2^bits, hi*2^bits).
  /// Keeps exact-backend coordinates compact.
  Rational next_dyadic(const Rational& lo, const Rational& hi, int bits = 16);

  /// Derived independent stream for (this seed, index, stage). Stable hashing
  /// makes parallel experiment pipelines reproducible.
  Rng child(uint64_t index, const std::string& stage = "") const;

  uint64_t seed() const { return seed_; }

private:
  uint64_t seed_;
  uint64_t s_[4];
};

/// FNV-1a, used for fanning a root seed out over named stages.
uint64_t stable_hash(const std::string& s);
uint64_t stable_mix(uint64_t a, uint64_t b);

} // namespace shapesep

#endif
