#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qamp/rng.hpp"
#include "qamp/unitary.hpp"

namespace qamp {

struct GoodSetSummary {
  std::uint64_t t = 0;
  std::uint64_t n = 0;
};

// Black-box Boolean predicate on {0..N-1} with query accounting. The counter
// is the paper's cost measure: evaluate() charges one query, and simulated
// operators charge their algorithm-level cost through charge() (applying the
// iterate Q once costs one query regardless of how the matrix was built).
//
// peek() is the simulator's ground-truth path: matrix construction, analytic
// sampling and test harnesses read the predicate through it without touching
// the counter.
//
// Copies share the counter (a copy is a view of the same black box); use
// clone_with_fresh_counter() for independent trials.
class Oracle {
 public:
  Oracle(std::uint64_t domain_size, std::function<bool(std::uint64_t)> predicate);

  std::uint64_t domain_size() const { return n_; }

  // Counted evaluation. Throws std::out_of_range for x >= domain_size.
  bool evaluate(std::uint64_t x);

  // Uncounted ground-truth evaluation (same range check).
  bool peek(std::uint64_t x) const;

  void charge(std::uint64_t queries) { *counter_ += queries; }
  std::uint64_t queries() const { return *counter_; }

  // Predicate 1 - f over the same domain, sharing this counter: one
  // evaluation of the negation costs one query of f.
  Oracle negate() const;

  // A view with a different domain whose predicate consults this oracle;
  // shares this counter. Used for lifted and composite search spaces.
  Oracle derived_view(std::uint64_t domain_size,
                      std::function<bool(std::uint64_t)> predicate) const;

  Oracle clone_with_fresh_counter() const;

  // --- ground truth (uncounted, cached) -------------------------------
  // Generators attach their planted set; otherwise the first call
  // enumerates the domain (guarded against very large domains).
  std::uint64_t good_count() const;
  const std::vector<std::uint64_t>& good_set() const;  // sorted ascending
  bool has_known_good_count() const;

  // Uniform draw from the good (resp. bad) set; one rng draw each.
  std::uint64_t sample_good(Rng& rng) const;
  std::uint64_t sample_bad(Rng& rng) const;

  void attach_good_set(std::vector<std::uint64_t> sorted_good);

 private:
  std::uint64_t n_;
  std::function<bool(std::uint64_t)> fn_;
  std::shared_ptr<std::uint64_t> counter_;
  mutable std::shared_ptr<const std::vector<std::uint64_t>> good_;
  mutable std::optional<std::uint64_t> good_count_;

  void materialize_good_set() const;
};

// Exact t by exhaustive counted evaluation: costs N queries by design.
GoodSetSummary brute_count(Oracle& o);

// Diagonal phase operator S_chi(phi'): |x> -> e^{i phi'}|x> iff chi(x) = 1.
// Built from uncounted peeks; algorithm-level costs are charged where the
// operator is applied (one query per application of Q).
Unitary build_s_chi(const Oracle& o, double phi_prime);

// --- builders ----------------------------------------------------------
Oracle make_constant(std::uint64_t n, bool value);
Oracle make_singleton(std::uint64_t n, std::uint64_t x0);
// Uniform random good set of size t.
Oracle make_planted(std::uint64_t n, std::uint64_t t, std::uint64_t seed);
// Adversarial layout: good set clustered at the top of the domain.
Oracle make_clustered(std::uint64_t n, std::uint64_t t, std::uint64_t seed);

// Truth-table file: first line N, second line a string of N characters in
// {0,1}. The loader validates the length and alphabet.
Oracle load_truth_table(const std::string& path);
void save_truth_table(const Oracle& o, const std::string& path);

}  // namespace qamp
