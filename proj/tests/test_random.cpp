#include <cmath>

#include <gtest/gtest.h>

#include "tsylv/random.hpp"

namespace tsylv {
namespace {

TEST(Rng, SameSeedSameMatrices) {
  RngStream a(42), b(42);
  EXPECT_EQ(gauss_matrix(4, a), gauss_matrix(4, b));
  EXPECT_EQ(uniform_pm1_matrix(3, a), uniform_pm1_matrix(3, b));
  EXPECT_EQ(random_orthogonal(3, a), random_orthogonal(3, b));
}

TEST(Rng, DifferentSeedsDiffer) {
  RngStream a(1), b(2);
  EXPECT_NE(gauss_matrix(3, a), gauss_matrix(3, b));
}

TEST(Rng, DeriveIsDeterministicAndIndependentOfParentState) {
  RngStream a(9);
  const RngStream child1 = a.derive(5);
  a.gaussian();
  RngStream child2 = a.derive(5);
  RngStream c1 = child1;
  EXPECT_EQ(gauss_matrix(2, c1), gauss_matrix(2, child2));
  RngStream other = RngStream(9).derive(6);
  RngStream again = RngStream(9).derive(5);
  EXPECT_NE(gauss_matrix(2, other), gauss_matrix(2, again));
}

TEST(Rng, RandomOrthogonal) {
  RngStream rng(3);
  for (Index n : {1, 2, 3, 8}) {
    const Matrix q = random_orthogonal(n, rng);
    EXPECT_LE((q.transpose() * q - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(),
              100 * kUnitRoundoff * static_cast<double>(n));
  }
  const Matrix q3 = random_orthogonal(3, rng);
  EXPECT_NEAR(std::abs(q3.determinant()), 1.0, 1e-10);
}

TEST(Rng, GaussianMoments) {
  RngStream rng(4);
  const Matrix g = gauss_matrix(100, rng);
  const double mean = g.mean();
  const double se = 1.0 / std::sqrt(static_cast<double>(g.size()));
  EXPECT_LE(std::abs(mean), 5 * se);
  const double var = (g.array() - mean).square().mean();
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(Rng, UniformOpenInterval) {
  RngStream rng(5);
  const Matrix f = uniform_pm1_matrix(100, rng);
  EXPECT_LT(f.maxCoeff(), 1.0);
  EXPECT_GT(f.minCoeff(), -1.0);
  EXPECT_LE(std::abs(f.mean()), 5 * std::sqrt(1.0 / 3.0 / 1e4));
}

}  // namespace
}  // namespace tsylv
