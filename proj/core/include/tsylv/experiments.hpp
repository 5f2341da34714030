#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tsylv/matrix.hpp"
#include "tsylv/random.hpp"
#include "tsylv/solver.hpp"

namespace tsylv {

/// A generated problem together with its exact solution.
struct Instance {
  ProblemTriple problem;
  Matrix exact_solution;
  std::vector<std::string> warnings;
};

/// A = diag(1, eps), B = diag(1, 0), C = diag(2, eps); X = I_2.
/// Requires 0 < eps < 1.
Instance gen_example1(double eps);

/// n = 2 instance with X = Q^T diag(10^-m, 10^m) Q,
/// A = [g1 0; g2 10^-m] Q, B = [g3 0; g4 2*10^-m] Q and C = A X + X^T B^T.
///
/// Draw order: Q (four Gaussians, via random_orthogonal), then g1..g4.
Instance gen_example2(int m, RngStream& rng);

/// (A, B) = (Q Ahat Z, Q Bhat Z) with Ahat = tril(G1, -1) + diag(a),
/// Bhat = tril(G2, -1) + diag(b), Q and Z Haar orthogonal, X Gaussian,
/// C = A X + X^T B^T.
///
/// Draw order: G1, G2 (full n x n Gaussian matrices), Q, Z, X. A pair
/// (a_i, b_i) violating unique solvability adds a warning, it does not throw.
Instance gen_example3(Index n, const Vector& a, const Vector& b, RngStream& rng);

/// Diagonals used for the n = 40 overestimation study when none are given.
inline constexpr double kExample3DiagA = 1.0;
inline constexpr double kExample3DiagB = 2.0;

struct PerturbedProblem {
  ProblemTriple problem;
  Matrix delta_a;
  Matrix delta_b;
  Matrix delta_c;
  /// Smallest eps' with |dA| <= eps'|A|, |dB| <= eps'|B|, |dC| <= eps'|C|,
  /// measured on the realized perturbation.
  double epsilon_star = 0.0;
};

/// dA = eps * F_A .* A (likewise B, C), F_* uniform on (-1, 1), drawn in
/// the order F_A, F_B, F_C. Zero entries stay zero.
PerturbedProblem perturb(const ProblemTriple& problem, double epsilon, RngStream& rng);

struct TrueErrors {
  double gamma_kappa = 0.0;  // |dX|_F / |X|_F
  double gamma_m = 0.0;      // |dX|_max / |X|_max
  double gamma_c = 0.0;      // |dX ./ X|_max (0/0 = 0, x/0 = inf)
};

TrueErrors true_errors(const Matrix& x, const Matrix& x_tilde);

/// |rel_condition * eps| ./ |dX ./ X|. Entries where dX./X is zero or not
/// finite are marked invalid and carry NaN.
struct Overestimation {
  Matrix ratio;
  BoolMatrix valid;
};

Overestimation overestimation(const Matrix& rel_condition, double epsilon,
                              const Matrix& dx_over_x);

/// Per-entry running means over samples, skipping invalid entries.
class OverestimationStats {
 public:
  OverestimationStats() = default;
  OverestimationStats(Index rows, Index cols);

  void add(const Overestimation& sample);

  Matrix mean() const;  // NaN where no sample was valid
  const Eigen::MatrixXi& counts() const noexcept { return counts_; }
  /// Mean and (population) variance over the entries of mean().
  double mean_of_entries() const;
  double variance_of_entries() const;

 private:
  Matrix sums_;
  Eigen::MatrixXi counts_;
};

/// One Example-2 perturbation trial.
struct ExperimentRecord {
  double epsilon = 0.0;
  int m_param = 0;
  TrueErrors gamma;
  double kappa_eps = 0.0;
  double m_eps = 0.0;
  double c_eps = 0.0;
  double kappa_sce_eps = 0.0;
  double m_sce_eps = 0.0;
  double c_sce_eps = 0.0;
  double epsilon_star = 0.0;
  double mu_bar = 0.0;
  double eta = 0.0;
};

/// Generates the Example-2 problem from `problem_rng`, then uses `trial_rng`
/// for the k-sample estimates (normwise, then componentwise) and the
/// perturbation. The perturbed system is solved through its own Kronecker LU.
ExperimentRecord run_example2_trial(int m, double epsilon, RngStream& problem_rng,
                                    RngStream& trial_rng, int k = 3);

struct TableCell {
  double epsilon = 0.0;
  int m_param = 0;
  std::vector<ExperimentRecord> trials;

  /// Field-wise median over the trials.
  ExperimentRecord median() const;
};

/// Rows of table 1 (normwise bounds), 2 (mixed/componentwise bounds) or
/// 4 (backward errors): every (epsilon, m) cell, one trial per seed.
std::vector<TableCell> run_table(int table_id, std::span<const std::uint64_t> seeds, int k = 3);

std::vector<double> table_epsilons(int table_id);
std::vector<int> table_m_values(int table_id);

/// seeds[i] = mix_seed(base, i).
std::vector<std::uint64_t> trial_seeds(std::uint64_t base, int trials);

void write_table_csv(std::ostream& out, int table_id, std::span<const TableCell> cells);
void reproduce_tables(int table_id, std::span<const std::uint64_t> seeds,
                      const std::filesystem::path& out);

struct OverestimationConfig {
  int example = 3;  // 2 or 3
  int samples = 1000;
  double epsilon = 1e-16;
  int k = 3;
  Index n = 40;        // example 3 only
  int m_param = 2;     // example 2 only
  std::uint64_t seed = 1;
  Vector diag_a;       // example 3; empty means kExample3DiagA
  Vector diag_b;       // example 3; empty means kExample3DiagB
};

struct OverestimationResult {
  OverestimationStats normwise;
  OverestimationStats componentwise;
  int samples = 0;
  int skipped = 0;  // samples whose perturbed system was singular
};

OverestimationResult run_overestimation(const OverestimationConfig& config);
void write_overestimation_csv(std::ostream& out, const OverestimationResult& result);

}  // namespace tsylv
