#include "tsylv/backward_error.hpp"

#include <cmath>
#include <limits>

#include "minimax_lp.hpp"
#include "tsylv/errors.hpp"
#include "tsylv/linalg.hpp"

namespace tsylv {
namespace {

void check_shapes(const ProblemTriple& problem, const Matrix& y) {
  problem.validate();
  if (y.rows() != problem.n() || y.cols() != problem.n()) {
    throw DimensionError("backward error: Y must have the shape of A");
  }
}

}  // namespace

Matrix residual(const ProblemTriple& problem, const Matrix& y) {
  check_shapes(problem, y);
  return problem.c - apply_operator(problem.a, problem.b, problem.sign, y);
}

double eta_bound(const ProblemTriple& problem, const Matrix& y) {
  const double r = residual(problem, y).norm();
  const double na = problem.a.norm();
  const double nb = problem.b.norm();
  const double nc = problem.c.norm();
  const double ny = y.norm();
  const double s = sigma_min(y);

  const double scale = (na + nb) * ny + nc;
  const double denom = std::sqrt((na * na + nb * nb) * s * s + nc * nc);
  if (r == 0.0) return 0.0;
  if (denom == 0.0 || scale == 0.0) return std::numeric_limits<double>::infinity();
  return scale / denom * (r / scale);
}

UnderdeterminedSystem build_underdetermined(const ProblemTriple& problem, const Matrix& y) {
  check_shapes(problem, y);
  const Index n = problem.n();
  const Index nn = n * n;
  const Matrix eye = Matrix::Identity(n, n);
  const double s = sign_factor(problem.sign);

  UnderdeterminedSystem sys;
  sys.h.resize(nn, 3 * nn);
  sys.h.leftCols(nn) = kron(y.transpose(), eye) * vec(problem.a).asDiagonal();
  sys.h.middleCols(nn, nn) =
      s * vec_transpose_perm(n).right_multiply(kron(eye, y.transpose())) *
      vec(problem.b).asDiagonal();
  sys.h.rightCols(nn) = Matrix((-vec(problem.c)).asDiagonal());
  sys.r = vec(residual(problem, y));
  return sys;
}

BackwardErrorReport mu_bar(const ProblemTriple& problem, const Matrix& y) {
  const UnderdeterminedSystem sys = build_underdetermined(problem, y);
  const Index n = problem.n();
  const Index nn = n * n;

  BackwardErrorReport rep;
  rep.residual = unvec(sys.r, n);
  rep.eta_bound = eta_bound(problem, y);

  const auto fill_perturbations = [&](const Vector& nu) {
    rep.nu = nu;
    rep.delta_a = problem.a.cwiseProduct(unvec(nu.segment(0, nn), n));
    rep.delta_b = problem.b.cwiseProduct(unvec(nu.segment(nn, nn), n));
    rep.delta_c = problem.c.cwiseProduct(unvec(nu.segment(2 * nn, nn), n));
  };

  if (sys.r.isZero(0.0)) {
    rep.mu_bar = 0.0;
    fill_perturbations(Vector::Zero(3 * nn));
    return rep;
  }

  const QrFactors f = qr(sys.h.transpose());
  const Vector diag = f.r.diagonal().cwiseAbs();
  const double largest = diag.maxCoeff();
  const double threshold = 3.0 * static_cast<double>(nn) * kUnitRoundoff * largest;
  if (largest == 0.0 || diag.minCoeff() < threshold) {
    rep.mu_bar = std::numeric_limits<double>::infinity();
    rep.mu_bar_infinite = true;
    return rep;
  }

  const Vector z1 = f.r.transpose().triangularView<Eigen::Lower>().solve(sys.r);
  const Vector z = f.q.leftCols(nn) * z1;
  rep.mu_bar = z.cwiseAbs().maxCoeff();
  fill_perturbations(z);
  return rep;
}

double mu_exact_oracle(const UnderdeterminedSystem& sys) {
  if (sys.h.rows() != sys.r.size()) throw DimensionError("mu_exact_oracle: H and r disagree");
  if (sys.r.isZero(0.0)) return 0.0;
  const auto z = detail::min_inf_norm_solution(sys.h, sys.r);
  if (!z) return std::numeric_limits<double>::infinity();
  return z->cwiseAbs().maxCoeff();
}

}  // namespace tsylv
