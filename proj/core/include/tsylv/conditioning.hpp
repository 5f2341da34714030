#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tsylv/matrix.hpp"
#include "tsylv/random.hpp"
#include "tsylv/solver.hpp"

namespace tsylv {

enum class WallisMode { exact, approx };

/// Wallis factor omega_p: E|g^T d| = omega_p ||g||_2 for d uniform on the
/// unit sphere of R^p. `approx` is sqrt(2 / (pi (p - 1/2))).
double wallis(long p, WallisMode mode = WallisMode::exact);

/// Normwise (kappa), mixed (m) and componentwise (c) condition numbers
/// from the explicit Kronecker expressions.
struct ExactConditionResult {
  double kappa = 0.0;
  double mixed = 0.0;
  double componentwise = 0.0;
  /// True when some X_ij = 0 has a nonzero bound entry; componentwise is +inf.
  bool componentwise_infinite = false;
  /// |P^-1 (X^T (x) I)| vec|A| + |P^-1 (I (x) X^T) Pi| vec|B| + |P^-1| vec|C|
  Vector bound_vector;
};

/// Forms P^-1 column by column from the handle's LU, so it is meant for
/// desk-scale n (n^2 up to a few hundred). Throws NotUniquelySolvableError
/// for a singular operator.
ExactConditionResult exact_conditions(const SolverHandle& handle, const Matrix& x);
ExactConditionResult exact_conditions(const ProblemTriple& problem, const Matrix& x);

/// One perturbation direction (E, F, G) of the data [A, B, C].
struct DirectionTriple {
  Matrix e;
  Matrix f;
  Matrix g;
};

/// k directions whose stacked vecs [vec E; vec F; vec G] are orthonormal
/// in R^{3n^2}: Gaussian draws orthonormalized by MGS. A degenerate draw
/// is redrawn up to 8 times before DegeneracyError propagates.
std::vector<DirectionTriple> sample_directions(Index n, int k, RngStream& rng);

enum class PerturbationMode { normwise, componentwise };

struct SceEstimate {
  int k = 0;
  PerturbationMode mode = PerturbationMode::normwise;
  /// K_abs (normwise) or M_abs (componentwise), entrywise >= 0.
  Matrix abs_condition;
  /// R_rel = ||[A,B,C]||_F K_abs ./ X, or C_rel = M_abs ./ X. Entries at
  /// X_ij = 0 keep the absolute value.
  Matrix rel_condition;
  std::optional<double> kappa;          // normwise: ||K_abs||_F / ||X||_F
  std::optional<double> frobenius_abs;  // normwise: n_F = ||K_abs||_F
  std::optional<double> mixed;          // componentwise: ||M_abs||_max / ||X||_max
  std::optional<double> componentwise;  // componentwise: ||M_abs ./ X||_max
  double omega_p = 0.0;
  double omega_k = 0.0;
};

struct SceOptions {
  int k = 3;
  WallisMode wallis = WallisMode::approx;
};

/// Subspace condition estimate under normwise perturbations of [A, B, C].
SceEstimate sce_normwise(const SolverHandle& handle, const Matrix& x, RngStream& rng,
                         const SceOptions& options = {});

/// Same, with caller-chosen directions instead of random ones. The
/// directions are used as given (no orthonormalization); k = dirs.size().
SceEstimate sce_normwise(const SolverHandle& handle, const Matrix& x,
                         std::span<const DirectionTriple> dirs,
                         WallisMode wallis = WallisMode::approx);

/// Subspace condition estimate under componentwise perturbations: the
/// directions are masked entrywise by A, B, C before the derivative solves.
SceEstimate sce_componentwise(const SolverHandle& handle, const Matrix& x, RngStream& rng,
                              const SceOptions& options = {});

SceEstimate sce_componentwise(const SolverHandle& handle, const Matrix& x,
                              std::span<const DirectionTriple> dirs,
                              WallisMode wallis = WallisMode::approx);

}  // namespace tsylv
