#include "tsylv/conditioning.hpp"

#include <cmath>
#include <numbers>

#include "tsylv/errors.hpp"
#include "tsylv/linalg.hpp"

namespace tsylv {

double wallis(long p, WallisMode mode) {
  if (p < 1) throw DomainError("wallis: p must be >= 1");
  if (mode == WallisMode::approx) {
    return std::sqrt(2.0 / (std::numbers::pi * (static_cast<double>(p) - 0.5)));
  }
  if (p == 1) return 1.0;
  if (p == 2) return 2.0 / std::numbers::pi;
  double w = 1.0;
  if (p % 2 == 1) {
    // 1*3*5*...*(p-2) / (2*4*6*...*(p-1))
    for (long i = 1; i <= p - 2; i += 2) w *= static_cast<double>(i) / static_cast<double>(i + 1);
  } else {
    // (2/pi) * 2*4*...*(p-2) / (1*3*...*(p-1))
    w = 2.0 / std::numbers::pi;
    for (long i = 2; i <= p - 2; i += 2) w *= static_cast<double>(i) / static_cast<double>(i + 1);
  }
  return w;
}

ExactConditionResult exact_conditions(const SolverHandle& handle, const Matrix& x) {
  const ProblemTriple& p = handle.problem();
  const Index n = p.n();
  if (x.rows() != n || x.cols() != n) throw DimensionError("exact_conditions: X has wrong shape");
  const Index nn = n * n;

  const Matrix eye = Matrix::Identity(n, n);
  const Matrix p_inv = [&] {
    Matrix cols(nn, nn);
    Vector unit = Vector::Zero(nn);
    for (Index k = 0; k < nn; ++k) {
      unit[k] = 1.0;
      cols.col(k) = handle.solve_vec(unit);
      unit[k] = 0.0;
    }
    return cols;
  }();
  const Matrix m_a = p_inv * kron(x.transpose(), eye);
  const Matrix m_b = vec_transpose_perm(n).right_multiply(p_inv * kron(eye, x.transpose()));

  ExactConditionResult out;
  const double data_norm = std::sqrt(p.a.squaredNorm() + p.b.squaredNorm() + p.c.squaredNorm());
  const double op_norm = std::sqrt(m_a.squaredNorm() + m_b.squaredNorm() + p_inv.squaredNorm());
  out.kappa = op_norm * data_norm / x.norm();

  out.bound_vector = m_a.cwiseAbs() * vec(p.a.cwiseAbs()) + m_b.cwiseAbs() * vec(p.b.cwiseAbs()) +
                     p_inv.cwiseAbs() * vec(p.c.cwiseAbs());
  out.mixed = out.bound_vector.maxCoeff() / norm_max(x);

  const Quotient q = comp_quotient(out.bound_vector, vec(x.cwiseAbs()));
  out.componentwise_infinite = q.any_infinite();
  out.componentwise = q.values.cwiseAbs().maxCoeff();
  return out;
}

ExactConditionResult exact_conditions(const ProblemTriple& problem, const Matrix& x) {
  return exact_conditions(SolverHandle(problem), x);
}

std::vector<DirectionTriple> sample_directions(Index n, int k, RngStream& rng) {
  const Index nn = n * n;
  const Index dim = 3 * nn;
  if (k < 1 || k > dim) {
    throw DomainError("sample_directions: need 1 <= k <= 3n^2, got k = " + std::to_string(k));
  }
  constexpr int kMaxAttempts = 8;
  Matrix q;
  for (int attempt = 1;; ++attempt) {
    try {
      q = mgs_orthonormalize(gauss_matrix(dim, k, rng));
      break;
    } catch (const DegeneracyError&) {
      if (attempt == kMaxAttempts) throw;
    }
  }
  std::vector<DirectionTriple> dirs;
  dirs.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const Vector col = q.col(i);
    dirs.push_back({unvec(col.segment(0, nn), n), unvec(col.segment(nn, nn), n),
                    unvec(col.segment(2 * nn, nn), n)});
  }
  return dirs;
}

namespace {

// (omega_k / omega_p) sqrt(sum_i |Y_i|^2), entrywise.
Matrix condition_matrix(const SolverHandle& handle, const Matrix& x,
                        std::span<const DirectionTriple> dirs, double scale) {
  const Index n = handle.n();
  Matrix sum_sq = Matrix::Zero(n, n);
  for (const DirectionTriple& d : dirs) {
    sum_sq += handle.directional_derivative(x, d.e, d.f, d.g).cwiseAbs2();
  }
  return scale * sum_sq.cwiseSqrt();
}

// scale * absolute ./ X, keeping absolute unchanged where X is zero.
Matrix divide_keeping_zeros(const Matrix& absolute, const Matrix& x, double scale = 1.0) {
  Matrix out = absolute;
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) {
      if (x(i, j) != 0.0) out(i, j) = scale * absolute(i, j) / x(i, j);
    }
  }
  return out;
}

void check_inputs(const SolverHandle& handle, const Matrix& x,
                  std::span<const DirectionTriple> dirs) {
  const Index n = handle.n();
  if (x.rows() != n || x.cols() != n) throw DimensionError("sce: X has wrong shape");
  if (dirs.empty()) throw DomainError("sce: need at least one direction");
  for (const DirectionTriple& d : dirs) {
    if (d.e.rows() != n || d.e.cols() != n || d.f.rows() != n || d.f.cols() != n ||
        d.g.rows() != n || d.g.cols() != n) {
      throw DimensionError("sce: direction triple has wrong shape");
    }
  }
}

SceEstimate base_estimate(const SolverHandle& handle, std::size_t k, PerturbationMode mode,
                          WallisMode wallis_mode) {
  SceEstimate est;
  est.k = static_cast<int>(k);
  est.mode = mode;
  est.omega_p = wallis(3 * static_cast<long>(handle.n() * handle.n()), wallis_mode);
  est.omega_k = wallis(static_cast<long>(k), wallis_mode);
  return est;
}

}  // namespace

SceEstimate sce_normwise(const SolverHandle& handle, const Matrix& x,
                         std::span<const DirectionTriple> dirs, WallisMode wallis_mode) {
  check_inputs(handle, x, dirs);
  SceEstimate est = base_estimate(handle, dirs.size(), PerturbationMode::normwise, wallis_mode);
  const ProblemTriple& p = handle.problem();

  est.abs_condition = condition_matrix(handle, x, dirs, est.omega_k / est.omega_p);
  const double n_f = est.abs_condition.norm();
  const double data_norm = std::sqrt(p.a.squaredNorm() + p.b.squaredNorm() + p.c.squaredNorm());
  est.rel_condition = divide_keeping_zeros(est.abs_condition, x, data_norm);
  est.frobenius_abs = n_f;
  est.kappa = n_f / x.norm();
  return est;
}

SceEstimate sce_normwise(const SolverHandle& handle, const Matrix& x, RngStream& rng,
                         const SceOptions& options) {
  const auto dirs = sample_directions(handle.n(), options.k, rng);
  return sce_normwise(handle, x, dirs, options.wallis);
}

SceEstimate sce_componentwise(const SolverHandle& handle, const Matrix& x,
                              std::span<const DirectionTriple> dirs, WallisMode wallis_mode) {
  check_inputs(handle, x, dirs);
  SceEstimate est =
      base_estimate(handle, dirs.size(), PerturbationMode::componentwise, wallis_mode);
  const ProblemTriple& p = handle.problem();

  std::vector<DirectionTriple> masked;
  masked.reserve(dirs.size());
  for (const DirectionTriple& d : dirs) {
    masked.push_back({d.e.cwiseProduct(p.a), d.f.cwiseProduct(p.b), d.g.cwiseProduct(p.c)});
  }
  est.abs_condition = condition_matrix(handle, x, masked, est.omega_k / est.omega_p);
  est.rel_condition = divide_keeping_zeros(est.abs_condition, x);
  est.mixed = norm_max(est.abs_condition) / norm_max(x);
  est.componentwise = comp_quotient(est.abs_condition, x).values.cwiseAbs().maxCoeff();
  return est;
}

SceEstimate sce_componentwise(const SolverHandle& handle, const Matrix& x, RngStream& rng,
                              const SceOptions& options) {
  const auto dirs = sample_directions(handle.n(), options.k, rng);
  return sce_componentwise(handle, x, dirs, options.wallis);
}

}  // namespace tsylv
