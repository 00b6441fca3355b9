#ifndef FIAPOWER_RNG_HPP
#define FIAPOWER_RNG_HPP

#include <cstdint>
#include <random>

namespace fiapower {

// Deterministic RNG helpers. Distributions are hand-rolled on top of
// mt19937_64 because the standard distribution objects are
// implementation-defined and would break byte-identical reruns across
// library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // uniform in [0,1) with 53-bit resolution
  double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform integer in [0,n), rejection sampled (no modulo bias)
  uint64_t next_below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = eng_();
      if (r >= threshold) return r % n;
    }
  }

  // standard normal via Box-Muller
  double next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 eng_;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// combine two seeds into one stream id
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

}  // namespace fiapower

#endif
