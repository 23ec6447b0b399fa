#pragma once

#include <cstdint>
#include <random>

#include "minlab/qcore.hpp"

namespace minlab {

/// Seedable generator with platform-independent output.
///
/// Built on std::mt19937_64, whose raw output sequence is fixed by the
/// standard. The distribution layer (uniform, normal) is implemented here
/// because std:: distributions vary between standard libraries.
///
/// Stream splitting: stream `k` of seed `s` is seeded with
/// splitmix64(s ^ splitmix64(k + 1)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via the polar method.
  double normal();
  Complex complex_normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Haar-distributed d x d unitary (QR of a complex Ginibre matrix with the
/// phases of R's diagonal divided out).
CMatrix haar_unitary(std::size_t d, Rng& rng);

}  // namespace minlab
