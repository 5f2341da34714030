// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tsylv/backward_error.hpp"
#include "tsylv/conditioning.hpp"
#include "tsylv/errors.hpp"
#include "tsylv/experiments.hpp"
#include "tsylv/random.hpp"
#include "tsylv/solver.hpp"

namespace {

using namespace tsylv;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double data_scale(const ProblemTriple& p, const Matrix& y) {
  return (p.a.norm() + p.b.norm()) * y.norm() + p.c.norm();
}

Outcome example_one() {
  double worst_mc = 0.0;
  double worst_kappa = 0.0;
  for (double eps : {0.5, 0.1, 0.01}) {
    const Instance inst = gen_example1(eps);
    const ExactConditionResult r = exact_conditions(inst.problem, inst.exact_solution);
    worst_mc = std::max({worst_mc, std::abs(r.mixed - 2.0), std::abs(r.componentwise - 2.0)});
    const double closed = std::sqrt(63.0 / 4 + 15.0 / 8 * eps * eps + 27.0 / (eps * eps));
    worst_kappa = std::max(worst_kappa, std::abs(r.kappa - closed) / closed);
  }
  const bool mc_ok = worst_mc <= 1e-12;
  const bool kappa_ok = worst_kappa <= 1e-10;
  return {mc_ok && kappa_ok,
          fmt("m,c max |err| %.2e (%s); kappa vs stated closed form max rel err %.2e (%s)",
              worst_mc, mc_ok ? "ok" : "bad", worst_kappa, kappa_ok ? "ok" : "bad")};
}

Outcome solver_correctness() {
  RngStream root(2002);
  int solved = 0;
  int residual_fail = 0;
  double worst_res = 0.0;
  for (int attempt = 0; solved < 100 && attempt < 1000; ++attempt) {
    RngStream rng = root.derive(static_cast<std::uint64_t>(attempt));
    const Index n = 1 + attempt % 10;
    const ProblemTriple p{gauss_matrix(n, rng), gauss_matrix(n, rng), gauss_matrix(n, rng),
                          attempt % 3 == 0 ? Sign::minus : Sign::plus};
    const SolverHandle h(p);
    if (h.singular()) continue;
    const Matrix x = h.solve(p.c);
    const double res = residual(p, x).norm() / data_scale(p, x);
    worst_res = std::max(worst_res, res);
    residual_fail += res > 1e-10 ? 1 : 0;
    ++solved;
  }

  int tri_fail = 0;
  double worst_tri = 0.0;
  for (int t = 0; t < 50; ++t) {
    RngStream rng = root.derive(10000 + static_cast<std::uint64_t>(t));
    const Index n = 1 + t % 8;
    SchurFactors f;
    f.w = random_orthogonal(n, rng);
    f.v = random_orthogonal(n, rng);
    f.t_a = gauss_matrix(n, rng).triangularView<Eigen::StrictlyUpper>();
    f.t_b = gauss_matrix(n, rng).triangularView<Eigen::StrictlyUpper>();
    for (Index i = 0; i < n; ++i) {
      f.t_a(i, i) = 1.0 + std::abs(rng.uniform_pm1());
      f.t_b(i, i) = 3.0 + std::abs(rng.uniform_pm1());
    }
    const Sign s = t % 2 == 0 ? Sign::plus : Sign::minus;
    const Matrix a = f.w * f.t_a * f.v.transpose();
    const Matrix b = f.w * f.t_b * f.v.transpose();
    const Matrix c = gauss_matrix(n, rng);
    const Matrix x_kron = SolverHandle(ProblemTriple{a, b, c, s}).solve(c);
    const double rel = (solve_triangular(f, c, s) - x_kron).norm() / x_kron.norm();
    worst_tri = std::max(worst_tri, rel);
    tri_fail += rel > 1e-10 ? 1 : 0;
  }
  return {solved == 100 && residual_fail == 0 && tri_fail == 0,
          fmt("%d solves, worst scaled residual %.2e; 50 triangular, worst rel diff %.2e", solved,
              worst_res, worst_tri)};
}

Outcome solvability_grid() {
  const double values[] = {-1, 0, 1, 2};
  int cases = 0;
  int mismatches = 0;
  for (Sign s : {Sign::plus, Sign::minus}) {
    for (Index n = 1; n <= 3; ++n) {
      long total = 1;
      for (Index i = 0; i < 2 * n; ++i) total *= 4;
      for (long code = 0; code < total; ++code) {
        long c = code;
        Vector a(n), b(n);
        std::vector<EigenPair> pairs;
        for (Index i = 0; i < n; ++i) {
          a(i) = values[c % 4];
          c /= 4;
          b(i) = values[c % 4];
          c /= 4;
          pairs.emplace_back(a(i), b(i));
        }
        const ProblemTriple p{a.asDiagonal(), b.asDiagonal(), Matrix::Identity(n, n), s};
        const bool singular = SolverHandle(p).singular();
        mismatches += singular == eigen_pairs_solvable(pairs, s) ? 1 : 0;
        ++cases;
      }
    }
  }
  return {mismatches == 0, fmt("%d diagonal pencils, %d mismatches", cases, mismatches)};
}

Outcome directional_derivative_rate() {
  RngStream root(4004);
  const double h = 1e-4;
  double lo = 1e300, hi = 0.0;
  int bad = 0;
  for (int t = 0; t < 20; ++t) {
    RngStream rng = root.derive(static_cast<std::uint64_t>(t));
    const ProblemTriple p{gauss_matrix(3, rng), gauss_matrix(3, rng), gauss_matrix(3, rng)};
    const SolverHandle handle(p);
    const Matrix x = handle.solve(p.c);
    const Matrix e = gauss_matrix(3, rng), f = gauss_matrix(3, rng), g = gauss_matrix(3, rng);
    const Matrix y = handle.directional_derivative(x, e, f, g);
    const auto err = [&](double step) {
      const ProblemTriple q{p.a + step * e, p.b + step * f, p.c + step * g};
      return ((SolverHandle(q).solve(q.c) - x) / step - y).norm();
    };
    const double ratio = err(h) / err(h / 2);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    bad += (ratio < 1.5 || ratio > 2.5) ? 1 : 0;
  }
  return {bad == 0, fmt("20 instances, error ratio range [%.3f, %.3f]", lo, hi)};
}

Outcome sce_envelope() {
  std::string detail;
  bool pass = true;
  for (int m : {2, 4}) {
    RngStream gen(5005);
    const Instance inst = gen_example2(m, gen);
    const SolverHandle handle(inst.problem);
    const Matrix& x = inst.exact_solution;
    const ExactConditionResult exact = exact_conditions(handle, x);
    int in_k = 0, in_m = 0, in_c = 0;
    const auto within = [](double est, double ref) { return est >= ref / 10 && est <= 10 * ref; };
    for (int t = 0; t < 200; ++t) {
      RngStream rng(mix_seed(5005 + static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t)));
      const SceEstimate nw = sce_normwise(handle, x, rng);
      const SceEstimate cw = sce_componentwise(handle, x, rng);
      in_k += within(*nw.kappa, exact.kappa) ? 1 : 0;
      in_m += within(*cw.mixed, exact.mixed) ? 1 : 0;
      in_c += within(*cw.componentwise, exact.componentwise) ? 1 : 0;
    }
    pass = pass && in_k >= 190 && in_m >= 180 && in_c >= 180;
    detail += fmt("m=%d: kappa %d/200, m %d/200, c %d/200; ", m, in_k, in_m, in_c);
  }
  return {pass, detail};
}

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] >= v[i - 1])) return false;
  return true;
}

Outcome table_trends() {
  const auto seeds = trial_seeds(6006, 20);
  const auto cells = run_table(2, seeds);  // tables 1 and 2 share trials
  std::vector<ExperimentRecord> med;
  for (const TableCell& c : cells)
    if (c.epsilon == 1e-8) med.push_back(c.median());

  using Field = double (*)(const ExperimentRecord&);
  const std::pair<const char*, Field> fields[] = {
      {"gamma_kappa", [](const ExperimentRecord& r) { return r.gamma.gamma_kappa; }},
      {"gamma_m", [](const ExperimentRecord& r) { return r.gamma.gamma_m; }},
      {"gamma_c", [](const ExperimentRecord& r) { return r.gamma.gamma_c; }},
      {"kappa_eps", [](const ExperimentRecord& r) { return r.kappa_eps; }},
      {"m_eps", [](const ExperimentRecord& r) { return r.m_eps; }},
      {"c_eps", [](const ExperimentRecord& r) { return r.c_eps; }},
      {"kappa_sce_eps", [](const ExperimentRecord& r) { return r.kappa_sce_eps; }},
      {"m_sce_eps", [](const ExperimentRecord& r) { return r.m_sce_eps; }},
      {"c_sce_eps", [](const ExperimentRecord& r) { return r.c_sce_eps; }},
  };
  std::string broken;
  for (const auto& [name, get] : fields) {
    std::vector<double> v;
    for (const auto& r : med) v.push_back(get(r));
    if (!nondecreasing(v)) broken += std::string(broken.empty() ? "" : ",") + name;
  }
  const ExperimentRecord& m2 = med.front();
  const auto two_orders = [](double got, double ref) { return got >= ref / 100 && got <= ref * 100; };
  const bool cell_ok = two_orders(m2.gamma.gamma_kappa, 9.5e-8) && two_orders(m2.kappa_eps, 3.4e-6);
  return {broken.empty() && cell_ok,
          fmt("monotone in m: %s; (1e-8, m=2) gamma_kappa %.3e, kappa*eps %.3e",
              broken.empty() ? "all series" : ("not " + broken).c_str(), m2.gamma.gamma_kappa,
              m2.kappa_eps)};
}

Outcome sandwich() {
  RngStream root(7007);
  int bad = 0;
  double worst_upper = 0.0;
  for (int t = 0; t < 50; ++t) {
    RngStream rng = root.derive(static_cast<std::uint64_t>(t));
    const Index n = 1 + t % 3;
    const ProblemTriple p{gauss_matrix(n, rng), gauss_matrix(n, rng), gauss_matrix(n, rng)};
    const Matrix x = SolverHandle(p).solve(p.c);
    const Matrix y = x + 1e-6 * x.norm() * gauss_matrix(n, rng);
    const double bar = mu_bar(p, y).mu_bar;
    const double mu = mu_exact_oracle(build_underdetermined(p, y));
    const double cap = std::sqrt(3.0) * static_cast<double>(n);
    bad += (mu <= bar * (1 + 1e-10) && bar <= cap * mu * (1 + 1e-10)) ? 0 : 1;
    worst_upper = std::max(worst_upper, bar / (cap * mu));
  }
  return {bad == 0, fmt("50 instances, %d violations, max mu_bar/(sqrt3 n mu) %.3f", bad,
                        worst_upper)};
}

Outcome reconstruction() {
  RngStream root(8008);
  int bad = 0;
  double worst_rec = 0.0;
  double worst_adm = 0.0;
  for (int t = 0; t < 100; ++t) {
    RngStream rng = root.derive(static_cast<std::uint64_t>(t));
    const Index n = 1 + t % 5;
    const Sign s = t % 4 == 3 ? Sign::minus : Sign::plus;
    const ProblemTriple p{gauss_matrix(n, rng), gauss_matrix(n, rng), gauss_matrix(n, rng), s};
    const SolverHandle h(p);
    if (h.singular()) continue;
    const Matrix x = h.solve(p.c);
    const Matrix y = x + 1e-5 * x.norm() * gauss_matrix(n, rng);
    const BackwardErrorReport r = mu_bar(p, y);
    if (r.mu_bar_infinite) {
      ++bad;
      continue;
    }
    const Matrix lhs = (p.a + r.delta_a) * y +
                       sign_factor(s) * y.transpose() * (p.b + r.delta_b).transpose();
    const double rec = (lhs - p.c - r.delta_c).norm() / data_scale(p, y);
    worst_rec = std::max(worst_rec, rec);
    const auto excess = [&](const Matrix& d, const Matrix& m) {
      return (d.cwiseAbs() - (r.mu_bar + 1e-12) * m.cwiseAbs()).maxCoeff();
    };
    const double adm =
        std::max({excess(r.delta_a, p.a), excess(r.delta_b, p.b), excess(r.delta_c, p.c)});
    worst_adm = std::max(worst_adm, adm);
    bad += (rec > 1e-10 || adm > 0.0) ? 1 : 0;
  }
  return {bad == 0, fmt("100 instances, worst reconstruction %.2e, worst admissibility excess %.2e",
                        worst_rec, worst_adm)};
}

Outcome overestimation_stats() {
  OverestimationConfig cfg;  // n = 40, eps = 1e-16, k = 3, 1000 samples
  const auto start = Clock::now();
  const OverestimationResult r = run_overestimation(cfg);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const double oc = r.componentwise.mean_of_entries();
  const double on = r.normwise.mean_of_entries();
  const bool ok = oc >= 0.02 && oc <= 2 && on >= 7 && on <= 720 && secs < 600;
  return {ok, fmt("%d samples (%d skipped), mean O^C %.4f, mean O^N %.4f, %.1f s", r.samples,
                  r.skipped, oc, on, secs)};
}

Outcome backward_error_table() {
  const auto seeds = trial_seeds(1010, 20);
  const auto cells = run_table(4, seeds);
  double worst = 1.0;
  bool eta_ok = false;
  double eta_ratio = 0.0;
  for (const TableCell& c : cells) {
    const ExperimentRecord med = c.median();
    if (c.m_param <= 6 && c.epsilon >= 1e-9) {
      const double ratio = med.mu_bar / med.epsilon_star;
      worst = std::max({worst, ratio, 1.0 / ratio});
    }
    if (c.m_param == 6 && c.epsilon == 1e-6) {
      eta_ratio = med.eta / med.epsilon_star;
      eta_ok = eta_ratio >= 10;
    }
  }
  return {worst <= 100 && eta_ok,
          fmt("worst mu_bar vs eps* factor %.2f; eta/eps* at (m=6, 1e-6) %.3e", worst, eta_ratio)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {1, "example-1 exactness", example_one, 1},
      {2, "solver correctness", solver_correctness, 30},
      {3, "unique-solvability grid", solvability_grid, 1e9},
      {4, "directional derivative rate", directional_derivative_rate, 1e9},
      {5, "sce envelope", sce_envelope, 120},
      {6, "table 1/2 trends", table_trends, 1e9},
      {7, "mu_bar sandwich", sandwich, 1e9},
      {8, "backward-error reconstruction", reconstruction, 1e9},
      {9, "overestimation statistics", overestimation_stats, 600},
      {10, "table 4 backward errors", backward_error_table, 1e9},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > c.limit_seconds) {
      out.pass = false;
      out.detail += fmt(" [over time limit %.0f s]", c.limit_seconds);
    }
    failures += out.pass ? 0 : 1;
    std::printf("%s criterion %2d %-30s %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
