#pragma once

#include <optional>

#include "tsylv/matrix.hpp"

namespace tsylv {

/// LU with partial pivoting, reusable for any number of right-hand sides.
///
/// The factorization itself never fails. A pivot with
/// |u_ii| <= N * u * ||M||_max (N the dimension) marks the matrix singular
/// and every subsequent solve throws SingularOperatorError naming that pivot.
class LuFactorization {
 public:
  LuFactorization() = default;
  explicit LuFactorization(const Matrix& m);

  Index dimension() const noexcept { return dim_; }
  bool singular() const noexcept { return singular_pivot_.has_value(); }
  std::optional<Index> singular_pivot() const noexcept { return singular_pivot_; }
  double min_abs_pivot() const noexcept { return min_abs_pivot_; }
  double pivot_threshold() const noexcept { return threshold_; }

  Vector solve(const Vector& rhs) const;
  Matrix solve(const Matrix& rhs) const;

 private:
  void require_nonsingular() const;

  Eigen::PartialPivLU<Matrix> lu_;
  Index dim_ = 0;
  double threshold_ = 0.0;
  double min_abs_pivot_ = 0.0;
  std::optional<Index> singular_pivot_;
};

Matrix lu_solve(const Matrix& m, const Matrix& rhs);

struct QrFactors {
  Matrix q;  // rows x rows, orthogonal
  Matrix r;  // cols x cols, upper triangular
};

/// Householder QR, m = q * [r; 0]. Requires rows >= cols.
QrFactors qr(const Matrix& m);

/// Modified Gram-Schmidt on the columns of `columns`. A second sweep runs
/// for a column whose first-pass projections left more than sqrt(u) of
/// overlap. Throws DegeneracyError when a column collapses to
/// dimension * u of its original norm.
Matrix mgs_orthonormalize(const Matrix& columns);

double sigma_min(const Matrix& m);

}  // namespace tsylv
