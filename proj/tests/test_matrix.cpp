#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "tsylv/errors.hpp"
#include "tsylv/matrix.hpp"
#include "tsylv/random.hpp"

namespace tsylv {
namespace {

Matrix m22(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(Vec, StacksColumns) {
  const Vector v = vec(m22(1, 2, 3, 4));
  ASSERT_EQ(v.size(), 4);
  EXPECT_EQ(v(0), 1);
  EXPECT_EQ(v(1), 3);
  EXPECT_EQ(v(2), 2);
  EXPECT_EQ(v(3), 4);
}

TEST(Vec, ZeroAndScalar) {
  EXPECT_TRUE(vec(Matrix::Zero(3, 2)).isZero());
  const Vector v = vec(Matrix::Constant(1, 1, 7.5));
  ASSERT_EQ(v.size(), 1);
  EXPECT_EQ(v(0), 7.5);
}

TEST(Unvec, InvertsVec) {
  Vector v(4);
  v << 1, 3, 2, 4;
  EXPECT_EQ(unvec(v, 2), m22(1, 2, 3, 4));
  RngStream rng(3);
  const Vector r = gauss_matrix(9, 1, rng);
  EXPECT_EQ(vec(unvec(r, 3)), r);
  EXPECT_EQ(unvec(Vector::Constant(1, -2.0), 1)(0, 0), -2.0);
}

TEST(Unvec, RejectsWrongLength) { EXPECT_THROW(unvec(Vector::Zero(5), 2), DimensionError); }

TEST(Kron, BlockStructure) {
  const Matrix b = m22(1, 2, 3, 4);
  const Matrix k = kron(Matrix::Identity(2, 2), b);
  EXPECT_EQ(k.topLeftCorner(2, 2), b);
  EXPECT_EQ(k.bottomRightCorner(2, 2), b);
  EXPECT_TRUE(k.topRightCorner(2, 2).isZero());
  EXPECT_EQ(kron(Matrix::Constant(1, 1, 2.0), b), 2.0 * b);
}

TEST(Kron, VecIdentityBruteForce) {
  RngStream rng(5);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = gauss_matrix(2, rng);
    const Matrix b = gauss_matrix(2, rng);
    const Matrix x = gauss_matrix(2, rng);
    // (A (x) B) vec(X) = vec(B X A^T), with every product written out.
    Vector lhs = Vector::Zero(4);
    for (int i = 0; i < 2; ++i)
      for (int p = 0; p < 2; ++p)
        for (int j = 0; j < 2; ++j)
          for (int q = 0; q < 2; ++q) lhs(p + 2 * i) += a(i, j) * b(p, q) * x(q, j);
    EXPECT_LE((kron(a, b) * vec(x) - lhs).norm(), 1e-14 * lhs.norm());
    EXPECT_LE((lhs - vec(b * x * a.transpose())).norm(), 1e-14 * lhs.norm());
  }
}

TEST(Kron, MixedProduct) {
  RngStream rng(8);
  for (Index d = 1; d <= 3; ++d) {
    const Matrix a = gauss_matrix(d, rng), b = gauss_matrix(d, rng);
    const Matrix c = gauss_matrix(d, rng), e = gauss_matrix(d, rng);
    const Matrix lhs = kron(a, b) * kron(c, e);
    EXPECT_LE((lhs - kron(a * c, b * e)).norm(), 1e-13 * lhs.norm());
  }
}

TEST(VecTransposePerm, MapsVecToVecOfTranspose) {
  const Matrix m = m22(1, 2, 3, 4);  // vec = (a,c,b,d) = (1,3,2,4)
  EXPECT_EQ(vec_transpose_perm(2).apply(vec(m)), vec(m.transpose()));
  RngStream rng(1);
  for (Index n = 1; n <= 10; ++n) {
    const auto perm = vec_transpose_perm(n);
    const Matrix x = gauss_matrix(n, rng);
    EXPECT_EQ(perm.apply(vec(x)), vec(x.transpose()));
    const Matrix s = x + x.transpose();
    EXPECT_EQ(perm.apply(vec(s)), vec(s));
    const Vector v = gauss_matrix(n * n, 1, rng);
    EXPECT_EQ(perm.apply(perm.apply(v)), v);
    EXPECT_DOUBLE_EQ(perm.apply(v).norm(), v.norm());
    EXPECT_EQ(perm.dense() * v, perm.apply(v));
  }
}

TEST(VecTransposePerm, RightMultiplyMatchesDense) {
  RngStream rng(2);
  const auto perm = vec_transpose_perm(3);
  const Matrix m = gauss_matrix(5, 9, rng);
  EXPECT_EQ(perm.right_multiply(m), m * perm.dense());
}

TEST(Norms, Basic) {
  const Norms i2 = norms(Matrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(i2.fro, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(i2.max, 1.0);
  Matrix row(1, 2);
  row << 3, 4;
  EXPECT_DOUBLE_EQ(norms(row).fro, 5.0);
  Matrix col(3, 1);
  col << 1, -7, 2;
  EXPECT_DOUBLE_EQ(norms(col).inf, 7.0);
  EXPECT_DOUBLE_EQ(norms(m22(1, -2, 3, 4)).inf, 7.0);
}

TEST(CompQuotient, ZeroConvention) {
  const Quotient q = comp_quotient(Matrix::Zero(2, 2), Matrix::Zero(2, 2));
  EXPECT_TRUE(q.values.isZero());
  EXPECT_FALSE(q.any_infinite());

  const Matrix d = m22(1, -2, 3, 0.5);
  EXPECT_EQ(comp_quotient(d, d).values, Matrix::Ones(2, 2));

  const Quotient inf = comp_quotient(Matrix::Ones(1, 1), Matrix::Zero(1, 1));
  EXPECT_TRUE(inf.any_infinite());
  EXPECT_TRUE(std::isinf(inf.values(0, 0)));
}

TEST(CompQuotient, ShapeMismatch) {
  EXPECT_THROW(comp_quotient(Matrix::Zero(2, 2), Matrix::Zero(2, 3)), DimensionError);
}

TEST(MatrixText, RoundTripsExactly) {
  RngStream rng(4);
  const Matrix m = gauss_matrix(3, 4, rng) * 1e7;
  std::stringstream ss;
  write_matrix(ss, m);
  EXPECT_EQ(read_matrix(ss), m);
}

TEST(MatrixText, HeaderAndRows) {
  std::stringstream ss;
  write_matrix(ss, m22(1, 2, 3, 4));
  std::string first;
  std::getline(ss, first);
  EXPECT_EQ(first, "2 2");
}

TEST(MatrixText, RejectsMalformed) {
  for (const char* text : {"", "2 2\n1 2\n3\n", "2 x\n", "1 1\nfoo\n", "1 1\n1 2\n", "-1 2\n"}) {
    std::stringstream ss(text);
    EXPECT_THROW(read_matrix(ss), FormatError) << text;
  }
  EXPECT_THROW(load_matrix("/nonexistent/dir/m.txt"), FormatError);
}

}  // namespace
}  // namespace tsylv
