#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qamp::cli {

struct ExperimentSpec {
  std::string algorithm;

  // oracle source: a truth-table file or a seeded generator
  std::optional<std::string> truth_table;
  std::uint64_t n = 16;
  std::uint64_t t = 1;
  std::string oracle_kind = "planted";  // planted | clustered
  std::optional<std::uint64_t> oracle_seed;

  // algorithm parameters
  std::optional<std::uint64_t> m;
  double epsilon = 0.5;
  std::uint64_t t0 = 1;
  unsigned k = 1;
  double growth = 1.5;
  std::optional<double> a;              // exact-amplitude instance (two-level prep)
  std::string method = "rescale";       // derandomize: rescale | phase
  std::string heuristic = "identity";
  std::uint64_t r_size = 0;
  std::uint64_t h = 0;
  std::uint64_t x0 = 0;
  bool rough_from_qsearch = false;
  std::optional<std::uint64_t> max_queries;

  // harness
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string engine = "analytic";  // analytic | exact
  bool timings = false;
  std::vector<std::uint64_t> t_list;  // table subcommand
};

struct ExperimentReport {
  int exit_code = 0;  // 0 ok, 3 budget exhausted on all trials
  std::string json;
  std::string csv;
};

// Runs the experiment described by the spec. Throws std::invalid_argument for
// an invalid spec (the CLI maps that to exit code 2).
ExperimentReport run_experiment(const ExperimentSpec& spec);

}  // namespace qamp::cli
