#include "minimax_lp.hpp"

#include <cmath>
#include <vector>

#include "tsylv/errors.hpp"

namespace tsylv::detail {
namespace {

// Dense tableau simplex for min c^T x, A x = b, x >= 0, with Bland's rule.
class Simplex {
 public:
  Simplex(const Matrix& a, const Vector& b, const Vector& c) : a_(a), b_(b), c_(c) {}

  std::optional<Vector> solve() {
    const Index m = a_.rows();
    const Index v = a_.cols();
    total_ = v + m;
    tab_ = Matrix::Zero(m, total_ + 1);
    basis_.assign(static_cast<std::size_t>(m), 0);
    for (Index i = 0; i < m; ++i) {
      const double flip = b_[i] < 0.0 ? -1.0 : 1.0;
      tab_.row(i).head(v) = flip * a_.row(i);
      tab_(i, v + i) = 1.0;
      tab_(i, total_) = flip * b_[i];
      basis_[static_cast<std::size_t>(i)] = v + i;
    }

    // phase 1: minimize the sum of artificials
    Vector phase1 = Vector::Zero(total_);
    phase1.tail(m).setOnes();
    run(phase1, total_);
    const double infeasibility = tab_.col(total_).dot(basis_costs(phase1));
    if (infeasibility > 1e-9 * std::max(1.0, b_.cwiseAbs().sum())) return std::nullopt;

    // pivot remaining artificials out where possible; rows that cannot be
    // pivoted are redundant and stay at zero
    for (Index i = 0; i < m; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < v) continue;
      for (Index j = 0; j < v; ++j) {
        if (std::abs(tab_(i, j)) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
    }

    Vector phase2 = Vector::Zero(total_);
    phase2.head(v) = c_;
    run(phase2, v);

    Vector x = Vector::Zero(v);
    for (Index i = 0; i < m; ++i) {
      const Index col = basis_[static_cast<std::size_t>(i)];
      if (col < v) x[col] = tab_(i, total_);
    }
    polish(x);
    return x;
  }

 private:
  static constexpr double kPivotTol = 1e-11;
  static constexpr double kCostTol = 1e-12;
  static constexpr int kMaxIterations = 200000;

  Vector basis_costs(const Vector& cost) const {
    Vector cb(tab_.rows());
    for (Index i = 0; i < tab_.rows(); ++i) cb[i] = cost[basis_[static_cast<std::size_t>(i)]];
    return cb;
  }

  void pivot(Index row, Index col) {
    tab_.row(row) /= tab_(row, col);
    for (Index i = 0; i < tab_.rows(); ++i) {
      if (i == row) continue;
      const double factor = tab_(i, col);
      if (factor != 0.0) tab_.row(i) -= factor * tab_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Columns >= eligible never enter.
  void run(const Vector& cost, Index eligible) {
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      const Vector cb = basis_costs(cost);
      Index enter = -1;
      for (Index j = 0; j < eligible; ++j) {
        const double reduced = cost[j] - cb.dot(tab_.col(j));
        if (reduced < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;

      Index leave = -1;
      double best = 0.0;
      const double col_scale = tab_.col(enter).cwiseAbs().maxCoeff();
      for (Index i = 0; i < tab_.rows(); ++i) {
        const double coef = tab_(i, enter);
        if (coef <= kPivotTol * col_scale) continue;
        const double ratio = tab_(i, total_) / coef;
        if (leave < 0 || ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) throw Error("simplex: unbounded program");
      pivot(leave, enter);
    }
    throw Error("simplex: iteration limit reached");
  }

  // Re-solve the final basis against the original data to strip the
  // roundoff accumulated over the pivots.
  void polish(Vector& x) const {
    const Index m = a_.rows();
    std::vector<Index> cols;
    for (Index col : basis_) {
      if (col >= a_.cols()) return;
      cols.push_back(col);
    }
    Matrix basis_matrix(m, m);
    for (Index i = 0; i < m; ++i) basis_matrix.col(i) = a_.col(cols[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Matrix> lu(basis_matrix);
    if (!lu.isInvertible()) return;
    const Vector xb = lu.solve(b_);
    if (xb.minCoeff() < -1e-9 * std::max(1.0, xb.cwiseAbs().maxCoeff())) return;
    x.setZero();
    for (Index i = 0; i < m; ++i) x[cols[static_cast<std::size_t>(i)]] = std::max(0.0, xb[i]);
  }

  const Matrix& a_;
  const Vector& b_;
  const Vector& c_;
  Index total_ = 0;
  Matrix tab_;
  std::vector<Index> basis_;
};

}  // namespace

std::optional<Vector> min_inf_norm_solution(const Matrix& h, const Vector& r) {
  const Index m = h.rows();
  const Index n = h.cols();
  const double r_scale = r.cwiseAbs().maxCoeff();
  if (r_scale == 0.0) return Vector::Zero(n);

  // Variables [t, w (n), s (n)], all >= 0, with z = t 1 - w:
  //   (H 1) t - H w        = r / r_scale   (rows equilibrated)
  //   -2 t + w_i + s_i     = 0             (so -t <= z_i <= t)
  const Index rows = m + n;
  const Index vars = 1 + 2 * n;
  Matrix a = Matrix::Zero(rows, vars);
  Vector b = Vector::Zero(rows);
  for (Index i = 0; i < m; ++i) {
    const double row_scale = h.row(i).cwiseAbs().maxCoeff();
    const double inv = row_scale > 0.0 ? 1.0 / row_scale : 1.0;
    a(i, 0) = inv * h.row(i).sum();
    a.row(i).segment(1, n) = -inv * h.row(i);
    b[i] = inv * r[i] / r_scale;
  }
  for (Index i = 0; i < n; ++i) {
    a(m + i, 0) = -2.0;
    a(m + i, 1 + i) = 1.0;
    a(m + i, 1 + n + i) = 1.0;
  }
  Vector c = Vector::Zero(vars);
  c[0] = 1.0;

  Simplex lp(a, b, c);
  const auto x = lp.solve();
  if (!x) return std::nullopt;
  const double t = (*x)[0];
  Vector z = r_scale * (Vector::Constant(n, t) - x->segment(1, n));
  return z;
}

}  // namespace tsylv::detail
