#include "shapesep/prng.hpp"

#include <cmath>

namespace shapesep {

namespace {
uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
} // namespace

Rng::Rng(uint64_t seed) : seed_(seed) {
  uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

uint64_t Rng::next_u64() {
  const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

uint64_t Rng::next_below(uint64_t n) {
  if (n == 0) return 0;
  // rejection sampling to kill modulo bias
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

int64_t Rng::next_int(int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(next_below(static_cast<uint64_t>(hi - lo + 1)));
}

double Rng::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

Rational Rng::next_dyadic(const Rational& lo, const Rational& hi, int bits) {
  Rational scale(1);
  for (int i = 0; i < bits; ++i) scale *= 2;
  Rational span = (hi - lo) * scale;
  mpz_class steps(span.get_num() / span.get_den());
  if (steps <= 0) return lo;
  uint64_t cap = steps.fits_ulong_p() ? steps.get_ui() : UINT64_MAX;
  uint64_t pick = next_below(cap);
  return lo + Rational(static_cast<unsigned long>(pick)) / scale;
}

Rng Rng::child(uint64_t index, const std::string& stage) const {
  uint64_t h = stable_mix(seed_, index + 0x1ULL);
  if (!stage.empty()) h = stable_mix(h, stable_hash(stage));
  return Rng(h);
}

uint64_t stable_hash(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t stable_mix(uint64_t a, uint64_t b) {
  uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(x);
}

} // namespace shapesep
