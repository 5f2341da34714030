#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tsylv/backward_error.hpp"
#include "tsylv/conditioning.hpp"
#include "tsylv/errors.hpp"
#include "tsylv/experiments.hpp"
#include "tsylv/matrix.hpp"
#include "tsylv/solver.hpp"

namespace {

using nlohmann::json;
using namespace tsylv;

constexpr int kExitOk = 0;
constexpr int kExitNotSolvable = 2;
constexpr int kExitIo = 3;

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

// JSON has no infinity; encode it as a string.
json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

struct TripleArgs {
  std::string a;
  std::string b;
  std::string c;
  std::string sign = "plus";

  void attach(CLI::App* cmd) {
    cmd->add_option("A", a, "matrix file for A")->required();
    cmd->add_option("B", b, "matrix file for B")->required();
    cmd->add_option("C", c, "matrix file for C")->required();
    cmd->add_option("--sign", sign, "sign of the transpose term")
        ->check(CLI::IsMember({"plus", "minus"}));
  }

  ProblemTriple load() const {
    return {load_matrix(a), load_matrix(b), load_matrix(c),
            sign == "plus" ? Sign::plus : Sign::minus};
  }
};

Matrix solution_for(const SolverHandle& handle, const std::string& x_path) {
  if (!x_path.empty()) return load_matrix(x_path);
  return handle.solve(handle.problem().c);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and conditioning toolkit for A X +- X^T B^T = C"};
  app.require_subcommand(1);

  TripleArgs solve_args;
  std::string solve_out;
  auto* solve_cmd = app.add_subcommand("solve", "solve for X and print it in matrix text format");
  solve_args.attach(solve_cmd);
  solve_cmd->add_option("--out", solve_out, "write X to this file instead of stdout");

  TripleArgs exact_args;
  std::string exact_x;
  auto* exact_cmd =
      app.add_subcommand("cond-exact", "normwise, mixed and componentwise condition numbers");
  exact_args.attach(exact_cmd);
  exact_cmd->add_option("--x", exact_x, "solution file (default: solve the system)");

  TripleArgs sce_args;
  std::string sce_x;
  int sce_k = 3;
  std::uint64_t sce_seed = 1;
  std::string sce_mode = "normwise";
  auto* sce_cmd = app.add_subcommand("cond-sce", "subspace condition estimate");
  sce_args.attach(sce_cmd);
  sce_cmd->add_option("--x", sce_x, "solution file (default: solve the system)");
  sce_cmd->add_option("--k", sce_k, "number of sample directions")->check(CLI::PositiveNumber);
  sce_cmd->add_option("--seed", sce_seed, "random seed");
  sce_cmd->add_option("--mode", sce_mode, "perturbation model")
      ->check(CLI::IsMember({"normwise", "componentwise"}));

  TripleArgs be_args;
  std::string be_y;
  auto* be_cmd = app.add_subcommand("backward-error", "backward errors of an approximate solution");
  be_args.attach(be_cmd);
  be_cmd->add_option("Y", be_y, "approximate solution file")->required();

  int table_id = 1;
  int table_trials = 20;
  std::uint64_t table_seed = 1;
  std::string table_out;
  auto* rep_cmd = app.add_subcommand("reproduce", "median table over seeded Example-2 trials");
  rep_cmd->add_option("--table", table_id, "table id")->required()->check(CLI::IsMember({1, 2, 4}));
  rep_cmd->add_option("--trials", table_trials, "trials per cell")->check(CLI::PositiveNumber);
  rep_cmd->add_option("--seed", table_seed, "base seed");
  rep_cmd->add_option("--out", table_out, "CSV output path")->required();

  OverestimationConfig over;
  std::string over_out;
  auto* over_cmd =
      app.add_subcommand("overestimation", "mean overestimation of the SCE condition matrices");
  over_cmd->add_option("--example", over.example, "generator")->check(CLI::IsMember({2, 3}));
  over_cmd->add_option("--samples", over.samples, "number of samples")->check(CLI::PositiveNumber);
  over_cmd->add_option("--eps", over.epsilon, "perturbation magnitude")
      ->check(CLI::NonNegativeNumber);
  over_cmd->add_option("--k", over.k, "number of sample directions")->check(CLI::PositiveNumber);
  over_cmd->add_option("--n", over.n, "dimension for example 3")->check(CLI::PositiveNumber);
  over_cmd->add_option("--m", over.m_param, "scaling exponent for example 2")
      ->check(CLI::NonNegativeNumber);
  over_cmd->add_option("--seed", over.seed, "base seed");
  over_cmd->add_option("--out", over_out, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      const SolverHandle handle(solve_args.load());
      const Matrix x = handle.solve(handle.problem().c);
      if (solve_out.empty()) {
        write_matrix(std::cout, x);
      } else {
        save_matrix(solve_out, x);
      }
    } else if (*exact_cmd) {
      const SolverHandle handle(exact_args.load());
      const Matrix x = solution_for(handle, exact_x);
      const ExactConditionResult r = exact_conditions(handle, x);
      print_json({{"kappa", number(r.kappa)},
                  {"mixed", number(r.mixed)},
                  {"componentwise", number(r.componentwise)},
                  {"componentwise_infinite", r.componentwise_infinite}});
    } else if (*sce_cmd) {
      const SolverHandle handle(sce_args.load());
      const Matrix x = solution_for(handle, sce_x);
      RngStream rng(sce_seed);
      const SceOptions options{sce_k, WallisMode::approx};
      json j;
      if (sce_mode == "normwise") {
        const SceEstimate e = sce_normwise(handle, x, rng, options);
        j = {{"mode", "normwise"},
             {"k", e.k},
             {"kappa", number(*e.kappa)},
             {"frobenius_abs", number(*e.frobenius_abs)},
             {"abs_condition", to_json(e.abs_condition)},
             {"rel_condition", to_json(e.rel_condition)}};
      } else {
        const SceEstimate e = sce_componentwise(handle, x, rng, options);
        j = {{"mode", "componentwise"},
             {"k", e.k},
             {"mixed", number(*e.mixed)},
             {"componentwise", number(*e.componentwise)},
             {"abs_condition", to_json(e.abs_condition)},
             {"rel_condition", to_json(e.rel_condition)}};
      }
      print_json(j);
    } else if (*be_cmd) {
      const ProblemTriple problem = be_args.load();
      const Matrix y = load_matrix(be_y);
      const BackwardErrorReport r = mu_bar(problem, y);
      print_json({{"residual_fro", number(r.residual.norm())},
                  {"eta_bound", number(r.eta_bound)},
                  {"mu_bar", number(r.mu_bar)},
                  {"mu_bar_infinite", r.mu_bar_infinite}});
    } else if (*rep_cmd) {
      const auto seeds = trial_seeds(table_seed, table_trials);
      reproduce_tables(table_id, seeds, table_out);
    } else if (*over_cmd) {
      const OverestimationResult r = run_overestimation(over);
      std::ofstream file(over_out);
      if (!file) throw FormatError("cannot open " + over_out + " for writing");
      write_overestimation_csv(file, r);
      if (!file) throw FormatError("failed writing " + over_out);
      print_json({{"samples", r.samples},
                  {"skipped", r.skipped},
                  {"mean_normwise", number(r.normwise.mean_of_entries())},
                  {"variance_normwise", number(r.normwise.variance_of_entries())},
                  {"mean_componentwise", number(r.componentwise.mean_of_entries())},
                  {"variance_componentwise", number(r.componentwise.variance_of_entries())}});
    }
  } catch (const NotUniquelySolvableError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotSolvable;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
