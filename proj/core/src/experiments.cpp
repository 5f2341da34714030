#include "tsylv/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

#include "tsylv/backward_error.hpp"
#include "tsylv/conditioning.hpp"
#include "tsylv/errors.hpp"

namespace tsylv {

Instance gen_example1(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("gen_example1: need 0 < eps < 1");
  Instance inst;
  inst.problem.a = Eigen::Vector2d(1.0, eps).asDiagonal();
  inst.problem.b = Eigen::Vector2d(1.0, 0.0).asDiagonal();
  inst.problem.c = Eigen::Vector2d(2.0, eps).asDiagonal();
  inst.exact_solution = Matrix::Identity(2, 2);
  return inst;
}

Instance gen_example2(int m, RngStream& rng) {
  if (m < 0) throw DomainError("gen_example2: m must be >= 0");
  const double small = std::pow(10.0, -m);
  const double large = std::pow(10.0, m);
  const Matrix q = random_orthogonal(2, rng);
  const double g1 = rng.gaussian();
  const double g2 = rng.gaussian();
  const double g3 = rng.gaussian();
  const double g4 = rng.gaussian();

  Matrix la(2, 2);
  la << g1, 0.0, g2, small;
  Matrix lb(2, 2);
  lb << g3, 0.0, g4, 2.0 * small;

  Instance inst;
  inst.exact_solution = q.transpose() * Eigen::Vector2d(small, large).asDiagonal() * q;
  inst.problem.a = la * q;
  inst.problem.b = lb * q;
  inst.problem.c = apply_operator(inst.problem.a, inst.problem.b, Sign::plus, inst.exact_solution);
  return inst;
}

Instance gen_example3(Index n, const Vector& a, const Vector& b, RngStream& rng) {
  if (n < 1) throw DomainError("gen_example3: n must be >= 1");
  if (a.size() != n || b.size() != n) throw DimensionError("gen_example3: diagonals must have length n");
  Matrix a_hat = gauss_matrix(n, rng).triangularView<Eigen::StrictlyLower>();
  Matrix b_hat = gauss_matrix(n, rng).triangularView<Eigen::StrictlyLower>();
  a_hat.diagonal() = a;
  b_hat.diagonal() = b;
  const Matrix q = random_orthogonal(n, rng);
  const Matrix z = random_orthogonal(n, rng);

  Instance inst;
  inst.exact_solution = gauss_matrix(n, rng);
  inst.problem.a = q * a_hat * z;
  inst.problem.b = q * b_hat * z;
  inst.problem.c = apply_operator(inst.problem.a, inst.problem.b, Sign::plus, inst.exact_solution);

  std::vector<EigenPair> pairs;
  for (Index i = 0; i < n; ++i) pairs.emplace_back(a[i], b[i]);
  std::vector<std::string> violations;
  if (!eigen_pairs_solvable(pairs, Sign::plus, &violations)) {
    for (auto& v : violations) inst.warnings.push_back("not uniquely solvable: " + v);
  }
  return inst;
}

PerturbedProblem perturb(const ProblemTriple& problem, double epsilon, RngStream& rng) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("perturb: epsilon must be finite and >= 0");
  }
  const Index n = problem.n();
  const Matrix fa = uniform_pm1_matrix(n, rng);
  const Matrix fb = uniform_pm1_matrix(n, rng);
  const Matrix fc = uniform_pm1_matrix(n, rng);

  PerturbedProblem out;
  out.delta_a = epsilon * fa.cwiseProduct(problem.a);
  out.delta_b = epsilon * fb.cwiseProduct(problem.b);
  out.delta_c = epsilon * fc.cwiseProduct(problem.c);
  out.problem = {problem.a + out.delta_a, problem.b + out.delta_b, problem.c + out.delta_c,
                 problem.sign};

  const auto worst = [](const Matrix& delta, const Matrix& data) {
    double w = 0.0;
    for (Index j = 0; j < data.cols(); ++j) {
      for (Index i = 0; i < data.rows(); ++i) {
        if (data(i, j) != 0.0) w = std::max(w, std::abs(delta(i, j) / data(i, j)));
      }
    }
    return w;
  };
  out.epsilon_star = std::max({worst(out.delta_a, problem.a), worst(out.delta_b, problem.b),
                               worst(out.delta_c, problem.c)});
  return out;
}

TrueErrors true_errors(const Matrix& x, const Matrix& x_tilde) {
  if (x.rows() != x_tilde.rows() || x.cols() != x_tilde.cols()) {
    throw DimensionError("true_errors: shape mismatch");
  }
  const Matrix dx = x_tilde - x;
  TrueErrors out;
  out.gamma_kappa = dx.norm() / x.norm();
  out.gamma_m = norm_max(dx) / norm_max(x);
  out.gamma_c = norm_max(comp_quotient(dx, x).values);
  return out;
}

Overestimation overestimation(const Matrix& rel_condition, double epsilon,
                              const Matrix& dx_over_x) {
  if (rel_condition.rows() != dx_over_x.rows() || rel_condition.cols() != dx_over_x.cols()) {
    throw DimensionError("overestimation: shape mismatch");
  }
  Overestimation out{Matrix::Constant(rel_condition.rows(), rel_condition.cols(),
                                      std::numeric_limits<double>::quiet_NaN()),
                     BoolMatrix::Constant(rel_condition.rows(), rel_condition.cols(), false)};
  for (Index j = 0; j < rel_condition.cols(); ++j) {
    for (Index i = 0; i < rel_condition.rows(); ++i) {
      const double d = dx_over_x(i, j);
      if (d == 0.0 || !std::isfinite(d)) continue;
      out.ratio(i, j) = std::abs(rel_condition(i, j) * epsilon) / std::abs(d);
      out.valid(i, j) = true;
    }
  }
  return out;
}

OverestimationStats::OverestimationStats(Index rows, Index cols)
    : sums_(Matrix::Zero(rows, cols)), counts_(Eigen::MatrixXi::Zero(rows, cols)) {}

void OverestimationStats::add(const Overestimation& sample) {
  if (sums_.size() == 0 && counts_.size() == 0) {
    sums_ = Matrix::Zero(sample.ratio.rows(), sample.ratio.cols());
    counts_ = Eigen::MatrixXi::Zero(sample.ratio.rows(), sample.ratio.cols());
  }
  if (sample.ratio.rows() != sums_.rows() || sample.ratio.cols() != sums_.cols()) {
    throw DimensionError("OverestimationStats: shape mismatch");
  }
  for (Index j = 0; j < sums_.cols(); ++j) {
    for (Index i = 0; i < sums_.rows(); ++i) {
      if (!sample.valid(i, j)) continue;
      sums_(i, j) += sample.ratio(i, j);
      counts_(i, j) += 1;
    }
  }
}

Matrix OverestimationStats::mean() const {
  Matrix out(sums_.rows(), sums_.cols());
  for (Index j = 0; j < sums_.cols(); ++j) {
    for (Index i = 0; i < sums_.rows(); ++i) {
      out(i, j) = counts_(i, j) > 0 ? sums_(i, j) / counts_(i, j)
                                    : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

double OverestimationStats::mean_of_entries() const {
  const Matrix m = mean();
  double sum = 0.0;
  long count = 0;
  for (Index k = 0; k < m.size(); ++k) {
    if (std::isnan(m(k))) continue;
    sum += m(k);
    ++count;
  }
  return count > 0 ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

double OverestimationStats::variance_of_entries() const {
  const Matrix m = mean();
  const double mu = mean_of_entries();
  double sum = 0.0;
  long count = 0;
  for (Index k = 0; k < m.size(); ++k) {
    if (std::isnan(m(k))) continue;
    sum += (m(k) - mu) * (m(k) - mu);
    ++count;
  }
  return count > 0 ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

ExperimentRecord run_example2_trial(int m, double epsilon, RngStream& problem_rng,
                                    RngStream& trial_rng, int k) {
  const Instance inst = gen_example2(m, problem_rng);
  const Matrix& x = inst.exact_solution;
  const SolverHandle handle(inst.problem);

  const ExactConditionResult exact = exact_conditions(handle, x);
  const SceOptions options{k, WallisMode::approx};
  const SceEstimate normwise = sce_normwise(handle, x, trial_rng, options);
  const SceEstimate compwise = sce_componentwise(handle, x, trial_rng, options);

  const PerturbedProblem pert = perturb(inst.problem, epsilon, trial_rng);
  const Matrix x_tilde = SolverHandle(pert.problem).solve(pert.problem.c);
  const BackwardErrorReport backward = mu_bar(inst.problem, x_tilde);

  ExperimentRecord rec;
  rec.epsilon = epsilon;
  rec.m_param = m;
  rec.gamma = true_errors(x, x_tilde);
  rec.kappa_eps = exact.kappa * epsilon;
  rec.m_eps = exact.mixed * epsilon;
  rec.c_eps = exact.componentwise * epsilon;
  rec.kappa_sce_eps = *normwise.kappa * epsilon;
  rec.m_sce_eps = *compwise.mixed * epsilon;
  rec.c_sce_eps = *compwise.componentwise * epsilon;
  rec.epsilon_star = pert.epsilon_star;
  rec.mu_bar = backward.mu_bar;
  rec.eta = backward.eta_bound;
  return rec;
}

namespace {

double median_of(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

void check_table_id(int table_id) {
  if (table_id != 1 && table_id != 2 && table_id != 4) {
    throw DomainError("table id must be 1, 2 or 4, got " + std::to_string(table_id));
  }
}

}  // namespace

ExperimentRecord TableCell::median() const {
  ExperimentRecord out;
  out.epsilon = epsilon;
  out.m_param = m_param;
  const auto field = [this](auto member) {
    std::vector<double> values;
    values.reserve(trials.size());
    for (const auto& t : trials) values.push_back(member(t));
    return median_of(std::move(values));
  };
  out.gamma.gamma_kappa = field([](const ExperimentRecord& r) { return r.gamma.gamma_kappa; });
  out.gamma.gamma_m = field([](const ExperimentRecord& r) { return r.gamma.gamma_m; });
  out.gamma.gamma_c = field([](const ExperimentRecord& r) { return r.gamma.gamma_c; });
  out.kappa_eps = field([](const ExperimentRecord& r) { return r.kappa_eps; });
  out.m_eps = field([](const ExperimentRecord& r) { return r.m_eps; });
  out.c_eps = field([](const ExperimentRecord& r) { return r.c_eps; });
  out.kappa_sce_eps = field([](const ExperimentRecord& r) { return r.kappa_sce_eps; });
  out.m_sce_eps = field([](const ExperimentRecord& r) { return r.m_sce_eps; });
  out.c_sce_eps = field([](const ExperimentRecord& r) { return r.c_sce_eps; });
  out.epsilon_star = field([](const ExperimentRecord& r) { return r.epsilon_star; });
  out.mu_bar = field([](const ExperimentRecord& r) { return r.mu_bar; });
  out.eta = field([](const ExperimentRecord& r) { return r.eta; });
  return out;
}

std::vector<double> table_epsilons(int table_id) {
  check_table_id(table_id);
  if (table_id == 4) return {1e-3, 1e-6, 1e-9, 1e-12};
  return {1e-8, 1e-16};
}

std::vector<int> table_m_values(int table_id) {
  check_table_id(table_id);
  return {2, 4, 6, 8, 10};
}

std::vector<std::uint64_t> trial_seeds(std::uint64_t base, int trials) {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(static_cast<std::size_t>(std::max(trials, 0)));
  for (int i = 0; i < trials; ++i) seeds.push_back(mix_seed(base, static_cast<std::uint64_t>(i)));
  return seeds;
}

std::vector<TableCell> run_table(int table_id, std::span<const std::uint64_t> seeds, int k) {
  std::vector<TableCell> cells;
  for (double eps : table_epsilons(table_id)) {
    for (int m : table_m_values(table_id)) {
      TableCell cell{eps, m, {}};
      for (std::uint64_t seed : seeds) {
        // The problem depends on (seed, m) only, so every table and every
        // epsilon sees the same triples.
        const RngStream root(seed);
        RngStream problem_rng = root.derive(static_cast<std::uint64_t>(m));
        RngStream trial_rng = problem_rng.derive(std::bit_cast<std::uint64_t>(eps));
        cell.trials.push_back(run_example2_trial(m, eps, problem_rng, trial_rng, k));
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

void write_table_csv(std::ostream& out, int table_id, std::span<const TableCell> cells) {
  check_table_id(table_id);
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::scientific << std::setprecision(10);
  switch (table_id) {
    case 1: out << "epsilon,m,trials,gamma_kappa,kappa_eps,kappa_sce_eps\n"; break;
    case 2: out << "epsilon,m,trials,gamma_m,m_eps,m_sce_eps,gamma_c,c_eps,c_sce_eps\n"; break;
    default: out << "epsilon,m,trials,epsilon_star,mu_bar,eta\n"; break;
  }
  for (const TableCell& cell : cells) {
    const ExperimentRecord r = cell.median();
    out << cell.epsilon << ',' << cell.m_param << ',' << cell.trials.size() << ',';
    switch (table_id) {
      case 1: out << r.gamma.gamma_kappa << ',' << r.kappa_eps << ',' << r.kappa_sce_eps; break;
      case 2:
        out << r.gamma.gamma_m << ',' << r.m_eps << ',' << r.m_sce_eps << ',' << r.gamma.gamma_c
            << ',' << r.c_eps << ',' << r.c_sce_eps;
        break;
      default: out << r.epsilon_star << ',' << r.mu_bar << ',' << r.eta; break;
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void reproduce_tables(int table_id, std::span<const std::uint64_t> seeds,
                      const std::filesystem::path& out) {
  const auto cells = run_table(table_id, seeds);
  std::ofstream file(out);
  if (!file) throw FormatError("cannot open " + out.string() + " for writing");
  write_table_csv(file, table_id, cells);
  if (!file) throw FormatError("failed writing " + out.string());
}

OverestimationResult run_overestimation(const OverestimationConfig& config) {
  if (config.example != 2 && config.example != 3) {
    throw DomainError("overestimation: example must be 2 or 3");
  }
  if (config.samples < 1) throw DomainError("overestimation: need at least one sample");
  const Index n = config.example == 2 ? 2 : config.n;
  const Vector diag_a =
      config.diag_a.size() > 0 ? config.diag_a : Vector::Constant(n, kExample3DiagA);
  const Vector diag_b =
      config.diag_b.size() > 0 ? config.diag_b : Vector::Constant(n, kExample3DiagB);

  OverestimationResult result{OverestimationStats(n, n), OverestimationStats(n, n), 0, 0};
  const RngStream root(config.seed);
  const SceOptions options{config.k, WallisMode::approx};
  for (int s = 0; s < config.samples; ++s) {
    RngStream rng = root.derive(static_cast<std::uint64_t>(s));
    const Instance inst = config.example == 2 ? gen_example2(config.m_param, rng)
                                              : gen_example3(n, diag_a, diag_b, rng);
    const Matrix& x = inst.exact_solution;
    try {
      const SolverHandle handle(inst.problem);
      const SceEstimate normwise = sce_normwise(handle, x, rng, options);
      const SceEstimate compwise = sce_componentwise(handle, x, rng, options);
      const PerturbedProblem pert = perturb(inst.problem, config.epsilon, rng);
      const Matrix x_tilde = SolverHandle(pert.problem).solve(pert.problem.c);
      const Matrix dx_over_x = comp_quotient(x_tilde - x, x).values;
      result.normwise.add(overestimation(normwise.rel_condition, config.epsilon, dx_over_x));
      result.componentwise.add(overestimation(compwise.rel_condition, config.epsilon, dx_over_x));
      ++result.samples;
    } catch (const NotUniquelySolvableError&) {
      ++result.skipped;
    }
  }
  return result;
}

void write_overestimation_csv(std::ostream& out, const OverestimationResult& result) {
  const Matrix mean_n = result.normwise.mean();
  const Matrix mean_c = result.componentwise.mean();
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::scientific << std::setprecision(10);
  out << "index,row,col,mean_normwise,mean_componentwise,count_normwise,count_componentwise\n";
  for (Index k = 0; k < mean_n.size(); ++k) {
    const Index i = k % mean_n.rows();
    const Index j = k / mean_n.rows();
    out << k + 1 << ',' << i + 1 << ',' << j + 1 << ',' << mean_n(k) << ',' << mean_c(k) << ','
        << result.normwise.counts()(k) << ',' << result.componentwise.counts()(k) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace tsylv
