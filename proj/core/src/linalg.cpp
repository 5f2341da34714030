#include "tsylv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tsylv/errors.hpp"

namespace tsylv {

LuFactorization::LuFactorization(const Matrix& m) : dim_(m.rows()) {
  if (m.rows() != m.cols()) throw DimensionError("lu: matrix must be square");
  if (dim_ == 0) return;
  lu_.compute(m);
  threshold_ = static_cast<double>(dim_) * kUnitRoundoff * m.cwiseAbs().maxCoeff();
  const auto& packed = lu_.matrixLU();
  min_abs_pivot_ = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < dim_; ++i) {
    const double pivot = std::abs(packed(i, i));
    if (pivot < min_abs_pivot_) min_abs_pivot_ = pivot;
    if (!singular_pivot_ && pivot <= threshold_) singular_pivot_ = i;
  }
}

void LuFactorization::require_nonsingular() const {
  if (singular_pivot_) {
    throw SingularOperatorError("lu: pivot " + std::to_string(*singular_pivot_) +
                                    " is below the singularity threshold",
                                *singular_pivot_);
  }
}

Vector LuFactorization::solve(const Vector& rhs) const {
  if (rhs.size() != dim_) throw DimensionError("lu: right-hand side length mismatch");
  require_nonsingular();
  if (dim_ == 0) return rhs;
  return lu_.solve(rhs);
}

Matrix LuFactorization::solve(const Matrix& rhs) const {
  if (rhs.rows() != dim_) throw DimensionError("lu: right-hand side row mismatch");
  require_nonsingular();
  if (dim_ == 0) return rhs;
  return lu_.solve(rhs);
}

Matrix lu_solve(const Matrix& m, const Matrix& rhs) { return LuFactorization(m).solve(rhs); }

QrFactors qr(const Matrix& m) {
  if (m.rows() < m.cols()) throw DimensionError("qr: requires rows >= cols");
  Eigen::HouseholderQR<Matrix> house(m);
  QrFactors out;
  out.q = house.householderQ() * Matrix::Identity(m.rows(), m.rows());
  out.r = house.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  return out;
}

Matrix mgs_orthonormalize(const Matrix& columns) {
  const Index dim = columns.rows();
  const Index k = columns.cols();
  if (k > dim) throw DimensionError("mgs: more columns than the dimension");
  const double reorth_tol = std::sqrt(kUnitRoundoff);
  const double collapse_tol = static_cast<double>(dim) * kUnitRoundoff;

  Matrix q = columns;
  for (Index j = 0; j < k; ++j) {
    const double original = q.col(j).norm();
    if (original == 0.0) {
      throw DegeneracyError("mgs: column " + std::to_string(j) + " is zero");
    }
    for (Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    double norm = q.col(j).norm();
    if (j > 0 && norm > 0.0) {
      // loss of orthogonality check against the already accepted columns
      double residual = 0.0;
      for (Index i = 0; i < j; ++i) {
        residual = std::max(residual, std::abs(q.col(i).dot(q.col(j))) / norm);
      }
      if (residual > reorth_tol) {
        for (Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
        norm = q.col(j).norm();
      }
    }
    if (norm <= collapse_tol * original) {
      throw DegeneracyError("mgs: column " + std::to_string(j) +
                            " is numerically dependent on the previous ones");
    }
    q.col(j) /= norm;
  }
  return q;
}

double sigma_min(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("sigma_min: matrix must be square");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace tsylv
