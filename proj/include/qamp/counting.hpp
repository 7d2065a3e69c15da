#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "qamp/estimate.hpp"

namespace qamp {

struct CountResult {
  double t_prime = 0.0;       // raw real estimate
  std::uint64_t t_tilde = 0;  // rounded, |t_tilde - t_prime| <= 2/3
  std::uint64_t m = 0;        // final modulus passed to Count
  unsigned k = 1;             // confidence parameter of the reported bound
  std::uint64_t queries = 0;  // oracle counter delta over the whole call
};

struct CountOptions {
  Engine engine = Engine::analytic;
};

// Count(f, M) = N * Est_Amp(uniform, f, M). A = W when N is a power of two,
// F_N otherwise. Uses exactly M queries.
double count(Oracle& f, std::uint64_t m, Rng& rng, const CountOptions& options = {});

// Nearest integer; exact half ties round down.
std::uint64_t round_count(double t_prime);

// Rounds the prescribed modulus up to the next even integer. The t = N
// certainty clauses of the counting theorem need an even modulus, so the
// composite algorithms pass their Count moduli through this (at most one
// extra query each).
std::uint64_t even_up(std::uint64_t m);

// Count with M = ceil(sqrt(N)): error within a few standard deviations,
// exactly ceil(sqrt(N)) queries.
CountResult count_std(Oracle& f, Rng& rng, const CountOptions& options = {});

struct ApproxCountOptions {
  Engine engine = Engine::analytic;
  // Variant from the paper's remark: seed the rough estimate from QSearch's
  // final schedule value instead of the doubling loop.
  bool rough_from_qsearch = false;
};

// |t_tilde - t| <= eps * t with probability >= 2/3, expected queries
// Theta((1/eps) sqrt(N/t)) for t > 0; certain (and Theta(sqrt(N))) at t = 0.
CountResult approx_count(Oracle& f, double eps, Rng& rng,
                         const ApproxCountOptions& options = {});

// t_tilde = t with probability >= 2/3, expected queries
// Theta(sqrt((t+1)(N-t+1))).
CountResult exact_count(Oracle& f, Rng& rng, const CountOptions& options = {});

struct ExactCountTrace {
  double t_prime_1 = 0.0;
  double t_prime_2 = 0.0;
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
};
CountResult exact_count(Oracle& f, Rng& rng, const CountOptions& options,
                        ExactCountTrace* trace);

// Thrown by decide_zero_or_t0 when the de-randomized run ends in a mixed
// state, which cannot happen under the promise t in {0, t0}.
class PromiseViolation : public std::runtime_error {
 public:
  explicit PromiseViolation(const std::string& what) : std::runtime_error(what) {}
};

struct DecideResult {
  bool is_t0 = false;
  std::optional<std::uint64_t> witness;  // uniformly random element of f^{-1}(1)
  std::uint64_t queries = 0;
};

// Promise problem t in {0, t0}: decides which holds with certainty
// (probability >= 1 - 1e-8 in simulation) using Theta(sqrt(N/t0)) queries.
DecideResult decide_zero_or_t0(Oracle& f, std::uint64_t t0, Rng& rng,
                               const CountOptions& options = {});

struct OptCountPlan {
  std::uint64_t l1 = 0;                // ~ sqrt(N/(t+1)) proxy
  std::uint64_t l2 = 0;                // ~ sqrt((N-t)/(eps N)) proxy
  std::uint64_t m1 = 0;
  std::optional<std::uint64_t> m2;     // computed only when M1 > sqrt(N)
  std::uint64_t m = 0;                 // min(M1, M2)
  double s_scale = 0.0;                // cost scale S evaluated at the output
};

struct OptCountResult {
  CountResult count;
  OptCountPlan plan;
};

// Cost scale S = sqrt(N/(floor(eps t)+1)) + sqrt(t(N-t))/(floor(eps t)+1).
double opt_count_cost_scale(std::uint64_t n, std::uint64_t t, double eps);

// The appendix's optimal approximate counter. Requires 1/(3N) < eps <= 1.
OptCountResult opt_approx_count(Oracle& f, double eps, Rng& rng,
                                const CountOptions& options = {});

}  // namespace qamp
