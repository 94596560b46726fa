#pragma once
// Counter-based splittable RNG. Each (seed, stream) pair yields an
// independent sequence, so replicate r can use stream r and results do not
// depend on execution order.

#include <cstdint>

namespace rice {

class SplitRng {
 public:
  SplitRng(uint64_t seed, uint64_t stream);

  uint64_t next_u64();
  double uniform();          // [0, 1)
  double uniform(double a, double b);
  double normal();           // N(0,1), Box-Muller

 private:
  uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace rice
