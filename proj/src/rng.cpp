#include "rice/rng.hpp"

#include <cmath>

namespace rice {

namespace {

uint64_t splitmix64(uint64_t& x) {
  uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SplitRng::SplitRng(uint64_t seed, uint64_t stream) {
  // Mix seed and stream through two rounds so streams 0,1,2,... decorrelate.
  uint64_t s = seed;
  uint64_t a = splitmix64(s);
  s = a ^ (stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
  (void)splitmix64(s);
  state_ = s;
}

uint64_t SplitRng::next_u64() { return splitmix64(state_); }

double SplitRng::uniform() {
  return (next_u64() >> 11) * 0x1.0p-53;
}

double SplitRng::uniform(double a, double b) {
  return a + (b - a) * uniform();
}

double SplitRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  double u1, u2;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(2.0 * M_PI * u2);
  has_cached_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

}  // namespace rice
