#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsylv/linalg.hpp"
#include "tsylv/matrix.hpp"

namespace tsylv {

/// Which of A X + X^T B^T = C or A X - X^T B^T = C.
enum class Sign { plus, minus };

inline double sign_factor(Sign s) noexcept { return s == Sign::plus ? 1.0 : -1.0; }

struct ProblemTriple {
  Matrix a;
  Matrix b;
  Matrix c;
  Sign sign = Sign::plus;

  Index n() const noexcept { return a.rows(); }

  /// Throws DimensionError unless A, B, C are square and of equal size, and
  /// DomainError if an entry is not finite.
  void validate() const;
};

/// A X +- X^T B^T.
Matrix apply_operator(const Matrix& a, const Matrix& b, Sign sign, const Matrix& x);

/// P = I (x) A +- (B (x) I) Pi, so that P vec(X) = vec(A X +- X^T B^T).
Matrix assemble_operator(const Matrix& a, const Matrix& b, Sign sign);

/// Assembled Kronecker operator of one problem plus its cached LU.
///
/// Immutable after construction; concurrent solves against one handle are
/// safe. A singular operator is recorded, not thrown: the error surfaces on
/// the first solve.
class SolverHandle {
 public:
  explicit SolverHandle(ProblemTriple problem);

  const ProblemTriple& problem() const noexcept { return problem_; }
  Index n() const noexcept { return problem_.n(); }
  const Matrix& op() const noexcept { return op_; }
  const LuFactorization& factorization() const noexcept { return lu_; }
  bool singular() const noexcept { return lu_.singular(); }

  /// X with A X +- X^T B^T = rhs. Throws NotUniquelySolvableError.
  Matrix solve(const Matrix& rhs) const;
  Vector solve_vec(const Vector& rhs) const;

  /// Derivative of the solution map [A, B, C] -> X along [E, F, G]: the Y with
  /// A Y +- Y^T B^T = G - E X -+ X^T F^T, solved with the cached LU.
  Matrix directional_derivative(const Matrix& x, const Matrix& e, const Matrix& f,
                                const Matrix& g) const;

 private:
  ProblemTriple problem_;
  Matrix op_;
  LuFactorization lu_;
};

SolverHandle build_handle(ProblemTriple problem);
Matrix solve(const SolverHandle& handle, const Matrix& c);
Matrix directional_derivative(const SolverHandle& handle, const Matrix& x, const Matrix& e,
                              const Matrix& f, const Matrix& g);

/// (a_ii, b_ii): one generalized eigenvalue of the pencil A - lambda B,
/// kept as a pair so that infinite eigenvalues need no special casing.
using EigenPair = std::pair<double, double>;

struct SolvabilityReport {
  enum class Basis { eigenvalue_pairs, operator_pivots };

  bool solvable = true;
  Basis basis = Basis::operator_pivots;
  std::vector<std::string> violations;
  std::optional<Index> singular_pivot;  // operator_pivots only
};

/// Unique-solvability test. With eigenvalue pairs it checks
/// a_i a_j - b_i b_j != 0 for i != j and a_i +- b_i != 0; without them it
/// falls back to the pivots of the Kronecker operator.
SolvabilityReport solvability_check(const ProblemTriple& problem,
                                    std::optional<std::span<const EigenPair>> eigs = std::nullopt);

/// Pair-based predicate alone. Exact zero tests scaled by 4u relative.
bool eigen_pairs_solvable(std::span<const EigenPair> eigs, Sign sign,
                          std::vector<std::string>* violations = nullptr);

/// Caller-supplied generalized Schur factors with A = W T_A V^T and
/// B = W T_B V^T, T_A and T_B upper triangular.
struct SchurFactors {
  Matrix w;
  Matrix v;
  Matrix t_a;
  Matrix t_b;
};

/// Checks shapes, orthogonality of W and V (100 u n), reconstruction of A
/// and B to tol relative, and triangularity. Throws DimensionError or
/// DomainError.
void check_schur_factors(const SchurFactors& f, const Matrix& a, const Matrix& b,
                         double tol = 1e-12);

/// O(n^3) substitution solve in Schur coordinates. Rejects quasi-triangular
/// T_A / T_B (nonzero subdiagonal) with DomainError; a singular 2x2 pair
/// system raises NotUniquelySolvableError.
Matrix solve_triangular(const SchurFactors& f, const Matrix& c, Sign sign);

}  // namespace tsylv
