#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "qamp/amplify.hpp"

namespace qamp {

// Classical guessing function G over a seed space R: guess(r) produces a
// candidate input to f. guess must be pure in (instance, seed); the instance
// is bound into the closure.
struct Heuristic {
  std::uint64_t seed_space_size = 0;  // |R|
  std::function<std::uint64_t(std::uint64_t)> guess;
};

struct HeuristicStats {
  std::uint64_t h_f = 0;  // good seeds
  std::uint64_t t_f = 0;  // good inputs
  bool efficient = false;  // h_f/|R| > t_f/|X|
};

// Oracle chi(r) = f(G(f, r)) over {0..|R|-1}, sharing f's counter: each
// evaluation of the lifted predicate costs one f-query. Throws if a guess
// falls outside f's domain.
Oracle lift(const Heuristic& h, const Oracle& f);

struct HeuristicSearchResult {
  std::optional<std::uint64_t> solution;  // x with f(x) = 1
  std::optional<std::uint64_t> seed;      // the r that produced it
  std::uint64_t queries = 0;
  std::uint64_t rounds = 0;
};

// x = G(f, QSearch(uniform over R, lifted chi)); expected queries
// Theta(sqrt(|R|/h_f)). The returned (seed, solution) pair makes the
// embedding reversible: r -> (r, x) is injective by construction.
HeuristicSearchResult heuristic_search(const Heuristic& h, Oracle& f,
                                       const QSearchConfig& config, Rng& rng);

// Alternative embedding: G folded into the preparation over R x X with the
// membership test on the second register. Query-equivalent to lift().
HeuristicSearchResult heuristic_search_embedded(const Heuristic& h, Oracle& f,
                                                const QSearchConfig& config, Rng& rng);

// Exhaustive h_f and t_f on cloned counters (costs |R| + N queries there).
HeuristicStats stats(const Heuristic& h, const Oracle& f);

// --- instance builders and CLI plug-in registry -------------------------

struct HeuristicInstance {
  Oracle oracle;
  Heuristic heuristic;
};

// Seeds map onto the domain untouched: chi = f.
HeuristicInstance make_identity_heuristic(Oracle f);
// Every seed guesses the same candidate.
HeuristicInstance make_constant_heuristic(Oracle f, std::uint64_t x0,
                                          std::uint64_t r_size);
// Planted instance: t good inputs, h good seeds out of r_size.
HeuristicInstance make_planted_heuristic(std::uint64_t n, std::uint64_t t,
                                         std::uint64_t r_size, std::uint64_t h,
                                         std::uint64_t seed);

struct HeuristicSpec {
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  std::uint64_t r_size = 0;
  std::uint64_t h = 0;
  std::uint64_t x0 = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> truth_table_path;  // instance loaded from file
};

using HeuristicFactory = std::function<HeuristicInstance(const HeuristicSpec&)>;

void register_heuristic(const std::string& name, HeuristicFactory factory);
HeuristicInstance make_heuristic(const std::string& name, const HeuristicSpec& spec);
std::vector<std::string> registered_heuristics();

}  // namespace qamp
