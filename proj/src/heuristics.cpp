#include "qamp/heuristics.hpp"

#include <algorithm>
#include <stdexcept>

namespace qamp {

Oracle lift(const Heuristic& h, const Oracle& f) {
  if (!h.guess) throw std::invalid_argument("lift: heuristic has no guess function");
  if (h.seed_space_size == 0) throw std::invalid_argument("lift: empty seed space");
  Oracle base = f;  // shares the counter
  const std::uint64_t n = f.domain_size();
  auto guess = h.guess;
  return f.derived_view(h.seed_space_size, [base, guess, n](std::uint64_t r) {
    const std::uint64_t x = guess(r);
    if (x >= n)
      throw std::out_of_range("lift: heuristic guess outside the oracle domain");
    return base.peek(x);
  });
}

namespace {

HeuristicSearchResult finish_search(Oracle& f, const Heuristic& h,
                                    const QSearchResult& qr, std::uint64_t start,
                                    std::uint64_t seed_of_found, bool embedded,
                                    std::uint64_t found_x) {
  HeuristicSearchResult res;
  res.rounds = qr.rounds;
  if (qr.found) {
    const std::uint64_t r = seed_of_found;
    const std::uint64_t x = found_x;
    if (!f.evaluate(x))
      throw std::logic_error("heuristic_search: verification of the solution failed");
    if (!embedded && h.guess(r) != x)
      throw std::logic_error("heuristic_search: seed does not reproduce the solution");
    res.seed = r;
    res.solution = x;
  }
  res.queries = f.queries() - start;
  return res;
}

}  // namespace

HeuristicSearchResult heuristic_search(const Heuristic& h, Oracle& f,
                                       const QSearchConfig& config, Rng& rng) {
  const std::uint64_t start = f.queries();
  Oracle lifted = lift(h, f);
  const Preparation prep = Preparation::uniform(h.seed_space_size);
  const QSearchResult qr = qsearch(prep, lifted, config, rng);
  const std::uint64_t r = qr.found.value_or(0);
  return finish_search(f, h, qr, start, r, false, qr.found ? h.guess(r) : 0);
}

HeuristicSearchResult heuristic_search_embedded(const Heuristic& h, Oracle& f,
                                                const QSearchConfig& config, Rng& rng) {
  const std::uint64_t start = f.queries();
  const std::uint64_t r_size = h.seed_space_size;
  const std::uint64_t n = f.domain_size();
  if (r_size > kMaxStateDim / n)
    throw std::invalid_argument("heuristic_search_embedded: composite space exceeds cap");

  // A|0> = (1/sqrt(|R|)) sum_r |r, G(f, r)>, membership tested on the second
  // register.
  const auto d = static_cast<std::size_t>(r_size * n);
  std::vector<cdouble> amps(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(r_size));
  for (std::uint64_t r = 0; r < r_size; ++r) {
    const std::uint64_t x = h.guess(r);
    if (x >= n)
      throw std::out_of_range("heuristic_search_embedded: guess outside the domain");
    amps[r * n + x] = scale;
  }
  const Preparation prep = Preparation::from_state(StateVector(d, std::move(amps)));
  Oracle base = f;
  Oracle composite = f.derived_view(
      r_size * n, [base, n](std::uint64_t y) { return base.peek(y % n); });

  const QSearchResult qr = qsearch(prep, composite, config, rng);
  const std::uint64_t y = qr.found.value_or(0);
  return finish_search(f, h, qr, start, y / n, true, y % n);
}

HeuristicStats stats(const Heuristic& h, const Oracle& f) {
  Oracle fc = f.clone_with_fresh_counter();
  Oracle lifted = lift(h, fc);
  HeuristicStats st;
  for (std::uint64_t r = 0; r < h.seed_space_size; ++r)
    if (lifted.evaluate(r)) ++st.h_f;
  for (std::uint64_t x = 0; x < fc.domain_size(); ++x)
    if (fc.evaluate(x)) ++st.t_f;
  // h_f/|R| > t_f/|X| as exact integer arithmetic
  st.efficient = st.h_f * fc.domain_size() > st.t_f * h.seed_space_size;
  return st;
}

HeuristicInstance make_identity_heuristic(Oracle f) {
  Heuristic h;
  h.seed_space_size = f.domain_size();
  h.guess = [](std::uint64_t r) { return r; };
  return {std::move(f), std::move(h)};
}

HeuristicInstance make_constant_heuristic(Oracle f, std::uint64_t x0,
                                          std::uint64_t r_size) {
  if (x0 >= f.domain_size())
    throw std::invalid_argument("make_constant_heuristic: x0 outside the domain");
  if (r_size == 0) throw std::invalid_argument("make_constant_heuristic: empty seed space");
  Heuristic h;
  h.seed_space_size = r_size;
  h.guess = [x0](std::uint64_t) { return x0; };
  return {std::move(f), std::move(h)};
}

HeuristicInstance make_planted_heuristic(std::uint64_t n, std::uint64_t t,
                                         std::uint64_t r_size, std::uint64_t h,
                                         std::uint64_t seed) {
  if (t > n) throw std::invalid_argument("make_planted_heuristic: t exceeds domain");
  if (h > r_size)
    throw std::invalid_argument("make_planted_heuristic: h exceeds seed space");
  if (h > 0 && t == 0)
    throw std::invalid_argument("make_planted_heuristic: good seeds need good inputs");
  if (h < r_size && t == n)
    throw std::invalid_argument("make_planted_heuristic: bad seeds need bad inputs");

  Oracle f = make_planted(n, t, Rng::mix(seed, 0x66));
  const Oracle good_seed_set = make_planted(r_size, h, Rng::mix(seed, 0x72));

  auto goods = std::make_shared<std::vector<std::uint64_t>>(f.good_set());
  auto bads = std::make_shared<std::vector<std::uint64_t>>();
  for (std::uint64_t x = 0; x < n; ++x)
    if (!f.peek(x)) bads->push_back(x);
  auto seeds = std::make_shared<std::vector<std::uint64_t>>(good_seed_set.good_set());

  Heuristic heur;
  heur.seed_space_size = r_size;
  heur.guess = [goods, bads, seeds](std::uint64_t r) {
    const auto it = std::lower_bound(seeds->begin(), seeds->end(), r);
    if (it != seeds->end() && *it == r) {
      const auto rank = static_cast<std::uint64_t>(it - seeds->begin());
      return (*goods)[rank % goods->size()];
    }
    const std::uint64_t rank = r - static_cast<std::uint64_t>(it - seeds->begin());
    return (*bads)[rank % bads->size()];
  };
  return {std::move(f), std::move(heur)};
}

namespace {

std::map<std::string, HeuristicFactory>& registry() {
  static std::map<std::string, HeuristicFactory> instance;
  return instance;
}

Oracle instance_oracle(const HeuristicSpec& spec) {
  if (spec.truth_table_path) return load_truth_table(*spec.truth_table_path);
  return make_planted(spec.n, spec.t, spec.seed);
}

void ensure_builtins() {
  auto& reg = registry();
  if (!reg.empty()) return;
  reg["identity"] = [](const HeuristicSpec& spec) {
    return make_identity_heuristic(instance_oracle(spec));
  };
  reg["constant"] = [](const HeuristicSpec& spec) {
    Oracle f = instance_oracle(spec);
    const std::uint64_t r = spec.r_size ? spec.r_size : f.domain_size();
    return make_constant_heuristic(std::move(f), spec.x0, r);
  };
  reg["planted"] = [](const HeuristicSpec& spec) {
    return make_planted_heuristic(spec.n, spec.t, spec.r_size, spec.h, spec.seed);
  };
}

}  // namespace

void register_heuristic(const std::string& name, HeuristicFactory factory) {
  ensure_builtins();
  registry()[name] = std::move(factory);
}

HeuristicInstance make_heuristic(const std::string& name, const HeuristicSpec& spec) {
  ensure_builtins();
  const auto it = registry().find(name);
  if (it == registry().end())
    throw std::invalid_argument("make_heuristic: unknown heuristic '" + name + "'");
  return it->second(spec);
}

std::vector<std::string> registered_heuristics() {
  ensure_builtins();
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

}  // namespace qamp
