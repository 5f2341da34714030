#include "tsylv/solver.hpp"

#include <cmath>
#include <sstream>

#include "tsylv/errors.hpp"

namespace tsylv {

void ProblemTriple::validate() const {
  const Index size = a.rows();
  const auto square = [size](const Matrix& m) { return m.rows() == size && m.cols() == size; };
  if (!square(a) || !square(b) || !square(c)) {
    std::ostringstream msg;
    msg << "A, B, C must be square of equal size; got " << a.rows() << 'x' << a.cols() << ", "
        << b.rows() << 'x' << b.cols() << ", " << c.rows() << 'x' << c.cols();
    throw DimensionError(msg.str());
  }
  if (!a.allFinite() || !b.allFinite() || !c.allFinite()) {
    throw DomainError("A, B, C must have finite entries");
  }
}

Matrix apply_operator(const Matrix& a, const Matrix& b, Sign sign, const Matrix& x) {
  return a * x + sign_factor(sign) * (x.transpose() * b.transpose());
}

Matrix assemble_operator(const Matrix& a, const Matrix& b, Sign sign) {
  const Index n = a.rows();
  const double s = sign_factor(sign);
  Matrix p = Matrix::Zero(n * n, n * n);
  for (Index j = 0; j < n; ++j) {
    // I (x) A: diagonal block j is A
    p.block(j * n, j * n, n, n) = a;
  }
  // ((B (x) I) Pi)[i + j n, l + i n] = B(j, l)
  for (Index l = 0; l < n; ++l) {
    for (Index j = 0; j < n; ++j) {
      const double bjl = s * b(j, l);
      if (bjl == 0.0) continue;
      for (Index i = 0; i < n; ++i) p(i + j * n, l + i * n) += bjl;
    }
  }
  return p;
}

SolverHandle::SolverHandle(ProblemTriple problem) : problem_(std::move(problem)) {
  problem_.validate();
  op_ = assemble_operator(problem_.a, problem_.b, problem_.sign);
  lu_ = LuFactorization(op_);
}

Vector SolverHandle::solve_vec(const Vector& rhs) const {
  if (lu_.singular()) {
    throw NotUniquelySolvableError(
        "the transpose Sylvester equation is not uniquely solvable: the Kronecker operator is "
        "singular (pivot " + std::to_string(*lu_.singular_pivot()) +
            "), i.e. a generalized eigenvalue pair violates a_ii a_jj - b_ii b_jj != 0 or "
            "a_ii +- b_ii != 0",
        *lu_.singular_pivot());
  }
  return lu_.solve(rhs);
}

Matrix SolverHandle::solve(const Matrix& rhs) const {
  if (rhs.rows() != n() || rhs.cols() != n()) {
    throw DimensionError("solve: right-hand side must be " + std::to_string(n()) + "x" +
                         std::to_string(n()));
  }
  return unvec(solve_vec(vec(rhs)), n());
}

Matrix SolverHandle::directional_derivative(const Matrix& x, const Matrix& e, const Matrix& f,
                                            const Matrix& g) const {
  const double s = sign_factor(problem_.sign);
  return solve(g - e * x - s * (x.transpose() * f.transpose()));
}

SolverHandle build_handle(ProblemTriple problem) { return SolverHandle(std::move(problem)); }

Matrix solve(const SolverHandle& handle, const Matrix& c) { return handle.solve(c); }

Matrix directional_derivative(const SolverHandle& handle, const Matrix& x, const Matrix& e,
                              const Matrix& f, const Matrix& g) {
  return handle.directional_derivative(x, e, f, g);
}

namespace {

bool negligible(double value, double scale) {
  return std::abs(value) <= 4.0 * kUnitRoundoff * scale;
}

}  // namespace

bool eigen_pairs_solvable(std::span<const EigenPair> eigs, Sign sign,
                          std::vector<std::string>* violations) {
  const double s = sign_factor(sign);
  bool ok = true;
  const auto report = [&](std::string what) {
    ok = false;
    if (violations) violations->push_back(std::move(what));
  };
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    const auto [ai, bi] = eigs[i];
    if (negligible(ai + s * bi, std::abs(ai) + std::abs(bi))) {
      report("a_" + std::to_string(i + 1) + (s > 0 ? " + " : " - ") + "b_" +
             std::to_string(i + 1) + " = 0");
    }
    for (std::size_t j = i + 1; j < eigs.size(); ++j) {
      const auto [aj, bj] = eigs[j];
      if (negligible(ai * aj - bi * bj, std::abs(ai * aj) + std::abs(bi * bj))) {
        report("a_" + std::to_string(i + 1) + " a_" + std::to_string(j + 1) + " - b_" +
               std::to_string(i + 1) + " b_" + std::to_string(j + 1) + " = 0");
      }
    }
  }
  return ok;
}

SolvabilityReport solvability_check(const ProblemTriple& problem,
                                    std::optional<std::span<const EigenPair>> eigs) {
  SolvabilityReport report;
  if (eigs) {
    report.basis = SolvabilityReport::Basis::eigenvalue_pairs;
    report.solvable = eigen_pairs_solvable(*eigs, problem.sign, &report.violations);
    return report;
  }
  report.basis = SolvabilityReport::Basis::operator_pivots;
  const SolverHandle handle(problem);
  report.singular_pivot = handle.factorization().singular_pivot();
  report.solvable = !report.singular_pivot.has_value();
  if (!report.solvable) {
    report.violations.push_back("Kronecker operator singular at pivot " +
                                std::to_string(*report.singular_pivot));
  }
  return report;
}

namespace {

void check_square(const Matrix& m, Index n, const char* name) {
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError(std::string("Schur factor ") + name + " must be " + std::to_string(n) +
                         "x" + std::to_string(n));
  }
}

void check_orthogonal(const Matrix& m, const char* name) {
  const Index n = m.rows();
  const double err = norm_max(m.transpose() * m - Matrix::Identity(n, n));
  if (err > 100.0 * kUnitRoundoff * static_cast<double>(n)) {
    throw DomainError(std::string("Schur factor ") + name + " is not orthogonal (|Q^T Q - I|_max = " +
                      std::to_string(err) + ")");
  }
}

void check_upper_triangular(const Matrix& t, const char* name) {
  const Index n = t.rows();
  const double tol = 100.0 * kUnitRoundoff * static_cast<double>(n) * norm_max(t);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      if (std::abs(t(i, j)) <= tol) continue;
      if (i == j + 1) {
        throw DomainError(std::string(name) + " has a nonzero subdiagonal entry at (" +
                          std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          "): quasi-triangular 2x2 blocks are not supported, use the Kronecker "
                          "solver");
      }
      throw DomainError(std::string(name) + " is not upper triangular");
    }
  }
}

void check_factor_shapes(const SchurFactors& f, Index n) {
  check_square(f.w, n, "W");
  check_square(f.v, n, "V");
  check_square(f.t_a, n, "T_A");
  check_square(f.t_b, n, "T_B");
}

}  // namespace

void check_schur_factors(const SchurFactors& f, const Matrix& a, const Matrix& b, double tol) {
  const Index n = a.rows();
  check_square(a, n, "A");
  check_square(b, n, "B");
  check_factor_shapes(f, n);
  check_orthogonal(f.w, "W");
  check_orthogonal(f.v, "V");
  check_upper_triangular(f.t_a, "T_A");
  check_upper_triangular(f.t_b, "T_B");
  const Matrix vt = f.v.transpose();
  if ((a - f.w * f.t_a * vt).norm() > tol * a.norm()) {
    throw DomainError("Schur factors do not reproduce A = W T_A V^T");
  }
  if ((b - f.w * f.t_b * vt).norm() > tol * b.norm()) {
    throw DomainError("Schur factors do not reproduce B = W T_B V^T");
  }
}

Matrix solve_triangular(const SchurFactors& f, const Matrix& c, Sign sign) {
  const Index n = c.rows();
  check_square(c, n, "C");
  check_factor_shapes(f, n);
  check_orthogonal(f.w, "W");
  check_orthogonal(f.v, "V");
  check_upper_triangular(f.t_a, "T_A");
  check_upper_triangular(f.t_b, "T_B");

  const double s = sign_factor(sign);
  const Matrix& ta = f.t_a;
  const Matrix& tb = f.t_b;
  const Matrix ct = f.w.transpose() * c * f.w;
  Matrix y = Matrix::Zero(n, n);

  const auto fail = [](Index i, Index j) {
    throw NotUniquelySolvableError("solve_triangular: singular 2x2 system for entries (" +
                                       std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                       "): t^A_ii t^A_jj - t^B_ii t^B_jj or t^A_ii +- t^B_ii "
                                       "vanishes",
                                   i);
  };

  // Equation (i, j): sum_{k>=i} ta(i,k) y(k,j) + s sum_{k>=j} tb(j,k) y(k,i) = ct(i,j).
  // Pairs (i, j), i >= j, are closed over pairs with larger indices.
  for (Index j = n - 1; j >= 0; --j) {
    for (Index i = n - 1; i >= j; --i) {
      if (i == j) {
        double rhs = ct(i, i);
        for (Index k = i + 1; k < n; ++k) rhs -= (ta(i, k) + s * tb(i, k)) * y(k, i);
        const double d = ta(i, i) + s * tb(i, i);
        if (negligible(d, std::abs(ta(i, i)) + std::abs(tb(i, i)))) fail(i, i);
        y(i, i) = rhs / d;
        continue;
      }
      double r1 = ct(i, j);
      double r2 = ct(j, i);
      for (Index k = i + 1; k < n; ++k) {
        r1 -= ta(i, k) * y(k, j);
        r2 -= s * tb(i, k) * y(k, j);
      }
      for (Index k = j + 1; k < n; ++k) {
        r1 -= s * tb(j, k) * y(k, i);
        r2 -= ta(j, k) * y(k, i);
      }
      // [ta_ii      s tb_jj] [y_ij]   [r1]
      // [s tb_ii    ta_jj  ] [y_ji] = [r2]
      const double det = ta(i, i) * ta(j, j) - tb(i, i) * tb(j, j);
      if (negligible(det, std::abs(ta(i, i) * ta(j, j)) + std::abs(tb(i, i) * tb(j, j)))) {
        fail(i, j);
      }
      y(i, j) = (r1 * ta(j, j) - s * tb(j, j) * r2) / det;
      y(j, i) = (ta(i, i) * r2 - s * tb(i, i) * r1) / det;
    }
  }
  return f.v * y * f.w.transpose();
}

}  // namespace tsylv
