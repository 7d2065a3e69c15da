#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "experiment.hpp"

namespace {

using qamp::cli::ExperimentSpec;

void add_oracle_options(CLI::App* cmd, ExperimentSpec& spec) {
  cmd->add_option("--n", spec.n, "Domain size N");
  cmd->add_option("--t", spec.t, "Planted good-set size t");
  cmd->add_option("--oracle", spec.oracle_kind, "Generator: planted|clustered");
  auto* oseed = cmd->add_option("--oracle-seed", "Generator seed (default derived from --seed)");
  oseed->each([&spec](const std::string& v) { spec.oracle_seed = std::stoull(v); });
  auto* file = cmd->add_option("--file", "Truth-table file (overrides the generator)");
  file->each([&spec](const std::string& v) { spec.truth_table = v; });
}

void add_common_options(CLI::App* cmd, ExperimentSpec& spec) {
  cmd->add_option("--trials", spec.trials, "Number of trials");
  cmd->add_option("--seed", spec.seed, "Master seed (all randomness derives from it)");
  cmd->add_option("--engine", spec.engine, "Simulation engine: analytic|exact");
  cmd->add_flag("--timings", spec.timings, "Include wall-time fields in the report");
  auto* cap = cmd->add_option("--max-queries", "Query budget per trial");
  cap->each([&spec](const std::string& v) { spec.max_queries = std::stoull(v); });
}

int write_outputs(const qamp::cli::ExperimentReport& rep, const std::string& out_path,
                  const std::string& csv_path) {
  if (out_path.empty()) {
    std::cout << rep.json;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << rep.json;
  }
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return 2;
    }
    csv << rep.csv;
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qamp: amplitude amplification, amplitude estimation and quantum counting "
      "on a classical simulator"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string out_path;
  std::string csv_path;
  app.add_option("--out", out_path, "Write the JSON report to a file instead of stdout")
      ->configurable(false);
  app.add_option("--csv", csv_path, "Also write rows as CSV to a file")->configurable(false);

  auto* search = app.add_subcommand("search", "QSearch: find x with f(x) = 1");
  add_oracle_options(search, spec);
  add_common_options(search, spec);
  search->add_option("--c", spec.growth, "Schedule growth constant, 1 < c < 2");

  auto* amplify = app.add_subcommand("amplify", "Amplification with known a");
  add_oracle_options(amplify, spec);
  add_common_options(amplify, spec);
  auto* amp_a = amplify->add_option("--a", "Exact initial amplitude (two-level instance)");
  amp_a->each([&spec](const std::string& v) { spec.a = std::stod(v); });

  auto* derand = app.add_subcommand("derandomize", "Success with certainty, a known");
  add_oracle_options(derand, spec);
  add_common_options(derand, spec);
  derand->add_option("--method", spec.method, "rescale|phase");
  auto* der_a = derand->add_option("--a", "Exact initial amplitude (two-level instance)");
  der_a->each([&spec](const std::string& v) { spec.a = std::stod(v); });
  spec.engine = "analytic";

  auto* estimate = app.add_subcommand("estimate", "Amplitude estimation Est_Amp");
  add_oracle_options(estimate, spec);
  add_common_options(estimate, spec);
  auto* est_m = estimate->add_option("--m", "Modulus M (required)");
  est_m->required();
  est_m->each([&spec](const std::string& v) { spec.m = std::stoull(v); });
  auto* est_a = estimate->add_option("--a", "Exact amplitude instance (two-level prep)");
  est_a->each([&spec](const std::string& v) { spec.a = std::stod(v); });
  estimate->add_option("--k", spec.k, "Confidence parameter for the reported bound");

  auto* count = app.add_subcommand("count", "Count(f, M); default M = ceil(sqrt(N))");
  add_oracle_options(count, spec);
  add_common_options(count, spec);
  auto* count_m = count->add_option("--m", "Modulus M");
  count_m->each([&spec](const std::string& v) { spec.m = std::stoull(v); });
  count->add_option("--k", spec.k, "Confidence parameter for the reported bound");

  auto* approx = app.add_subcommand("approx-count", "Approx_Count(f, eps)");
  add_oracle_options(approx, spec);
  add_common_options(approx, spec);
  approx->add_option("--epsilon", spec.epsilon, "Relative accuracy, 0 < eps <= 1");
  approx->add_flag("--rough-from-qsearch", spec.rough_from_qsearch,
                   "Seed the rough estimate from QSearch's final schedule value");

  auto* opt = app.add_subcommand("opt-approx-count", "Appendix Opt_Approx_Count(f, eps)");
  add_oracle_options(opt, spec);
  add_common_options(opt, spec);
  opt->add_option("--epsilon", spec.epsilon, "Relative accuracy, 1/(3N) < eps <= 1");

  auto* exact = app.add_subcommand("exact-count", "Exact_Count(f)");
  add_oracle_options(exact, spec);
  add_common_options(exact, spec);

  auto* decide = app.add_subcommand("decide", "Promise decision: t = 0 or t = t0");
  add_oracle_options(decide, spec);
  add_common_options(decide, spec);
  decide->add_option("--t0", spec.t0, "Promised nonzero count");

  auto* heur = app.add_subcommand("heuristic", "Heuristic-embedded search");
  add_oracle_options(heur, spec);
  add_common_options(heur, spec);
  heur->add_option("--heuristic", spec.heuristic, "Registered heuristic name");
  heur->add_option("--r", spec.r_size, "Seed space size |R|");
  heur->add_option("--h", spec.h, "Planted good-seed count");
  heur->add_option("--x0", spec.x0, "Constant heuristic target");
  heur->add_option("--c", spec.growth, "Schedule growth constant, 1 < c < 2");

  auto* table = app.add_subcommand("table", "Quantum-vs-classical query scale table");
  table->add_option("--n", spec.n, "Domain size N");
  table->add_option("--t", spec.t_list, "t values (repeat or comma-separate)")
      ->delimiter(',');
  table->add_option("--epsilon", spec.epsilon, "Accuracy for the eps row");
  add_common_options(table, spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  spec.algorithm = app.get_subcommands().front()->get_name();

  try {
    const qamp::cli::ExperimentReport rep = qamp::cli::run_experiment(spec);
    return write_outputs(rep, out_path, csv_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
