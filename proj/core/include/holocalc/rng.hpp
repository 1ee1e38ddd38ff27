#pragma once

#include <cstdint>

#include "holocalc/matrix.hpp"

namespace holocalc {

/// Small deterministic generator (splitmix64). Used instead of the standard
/// distributions so that sampled estimates are bit-identical across standard
/// library implementations for a given seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed + 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Complex unit_circle();       // |z| = 1
  Complex in_disc(double r);   // |z| <= r
  Complex gaussian();          // standard complex normal

  Vector vector(std::size_t n, double scale = 1.0);
  Matrix matrix(std::size_t rows, std::size_t cols, double scale = 1.0);
  /// Haar-ish unitary via Gram-Schmidt of a Gaussian matrix.
  Matrix unitary(std::size_t n);

private:
  std::uint64_t state_;
};

}  // namespace holocalc
