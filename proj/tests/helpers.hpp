#pragma once

// Shared test utilities.  The uniform draw is built from raw mt19937_64
// output so sequences are identical across standard libraries.

#include <cstdint>
#include <random>

namespace testutil {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform() { return (eng() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

}  // namespace testutil
