#pragma once

#include "tsylv/matrix.hpp"
#include "tsylv/solver.hpp"

namespace tsylv {

/// R = C - A Y -+ Y^T B^T.
Matrix residual(const ProblemTriple& problem, const Matrix& y);

/// Normwise backward-error bound
///
///   ((|A|+|B|)|Y| + |C|) / sqrt((|A|^2 + |B|^2) sigma_min(Y)^2 + |C|^2)
///     * |R| / ((|A|+|B|)|Y| + |C|)
///
/// (Frobenius norms; the inverse-norm term is evaluated at Y). Finite for
/// singular Y as long as C != 0.
double eta_bound(const ProblemTriple& problem, const Matrix& y);

/// H z = r with H = [(Y^T (x) I) D1, +-(I (x) Y^T) Pi D2, -D3],
/// D1..D3 = diag(vec A), diag(vec B), diag(vec C), r = vec(R).
struct UnderdeterminedSystem {
  Matrix h;  // n^2 x 3n^2
  Vector r;  // n^2
};

UnderdeterminedSystem build_underdetermined(const ProblemTriple& problem, const Matrix& y);

struct BackwardErrorReport {
  Matrix residual;
  double eta_bound = 0.0;
  /// ||z||_inf for the minimum 2-norm solution z of H z = r; +inf when H is
  /// rank deficient.
  double mu_bar = 0.0;
  bool mu_bar_infinite = false;
  Vector nu;  // [nu1; nu2; nu3], empty when infinite
  Matrix delta_a;
  Matrix delta_b;
  Matrix delta_c;
};

/// Componentwise backward-error bound with the admissible perturbations
/// vec(dA) = D1 nu1, vec(dB) = D2 nu2, vec(dC) = D3 nu3 that realize it.
///
/// Computed from the QR factorization H^T = Q [R; 0]: z = Q [R^-T r; 0].
/// H counts as rank deficient when |R_ii| < 3 n^2 u max_j |R_jj|.
BackwardErrorReport mu_bar(const ProblemTriple& problem, const Matrix& y);

/// Exact componentwise backward error, min ||z||_inf subject to H z = r,
/// solved as a linear program (simplex). Test oracle for small systems
/// (3n^2 up to a few hundred). Returns +inf when H z = r is infeasible.
double mu_exact_oracle(const UnderdeterminedSystem& sys);

}  // namespace tsylv
