#pragma once

#include <cstdint>
#include <random>

#include "tsylv/matrix.hpp"

namespace tsylv {

/// Seeded random stream. Same seed, same sequence (on a given standard
/// library); there is no cross-implementation guarantee.
///
/// A stream has a single owner. Parallel trials should each get their own
/// stream, e.g. via derive().
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  double gaussian();
  /// Uniform on the open interval (-1, 1).
  double uniform_pm1();

  /// Child stream whose seed is a hash of (seed, key).
  RngStream derive(std::uint64_t key) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{-1.0, 1.0};
};

/// SplitMix64 finalizer applied to a ^ (b + golden ratio).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// Entries are drawn in column-major order.
Matrix gauss_matrix(Index rows, Index cols, RngStream& rng);
inline Matrix gauss_matrix(Index n, RngStream& rng) { return gauss_matrix(n, n, rng); }
Matrix uniform_pm1_matrix(Index rows, Index cols, RngStream& rng);
inline Matrix uniform_pm1_matrix(Index n, RngStream& rng) { return uniform_pm1_matrix(n, n, rng); }

/// Haar-distributed orthogonal matrix: Q from the QR of an n x n Gaussian
/// matrix, with columns signed so that diag(R) > 0.
Matrix random_orthogonal(Index n, RngStream& rng);

}  // namespace tsylv
