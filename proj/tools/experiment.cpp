#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qamp/counting.hpp"
#include "qamp/heuristics.hpp"
#include "report.hpp"

namespace qamp::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuerySlack = 50.0;  // query-scale satisfaction multiplier
constexpr std::uint64_t kDefaultQueryCap = 10'000'000;

struct Row {
  std::uint64_t trial = 0;
  enum class Kind { integer, real, none } kind = Kind::none;
  double outcome = 0.0;
  bool success = false;
  bool exhausted = false;
  bool bound_ok = false;
  std::uint64_t queries = 0;
  double wall_ms = 0.0;
};

struct Bound {
  std::string label;
  double value = 0.0;
};

Engine parse_engine(const std::string& s) {
  if (s == "exact") return Engine::exact;
  if (s == "analytic") return Engine::analytic;
  throw std::invalid_argument("engine must be 'exact' or 'analytic'");
}

std::uint64_t ceil_sqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  while (r * r < n) ++r;
  return r;
}

struct Instance {
  Oracle oracle;          // base instance; trials clone fresh counters
  Preparation prep;
  double a_true = 0.0;    // ground truth used for bounds and success flags
  std::uint64_t t_true = 0;
  std::uint64_t n = 0;
};

Instance build_instance(const ExperimentSpec& spec) {
  if (spec.a) {
    const double a = *spec.a;
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("--a must lie in [0, 1]");
    StateVector psi(2, {std::sqrt(1.0 - a), std::sqrt(a)});
    Instance inst{make_singleton(2, 1), Preparation::from_state(std::move(psi)), a,
                  a > 0 ? 1u : 0u, 2};
    return inst;
  }
  Oracle o = [&] {
    if (spec.truth_table) return load_truth_table(*spec.truth_table);
    const std::uint64_t oseed =
        spec.oracle_seed ? *spec.oracle_seed : Rng::mix(spec.seed, 0x6f7261636cULL);
    if (spec.t > spec.n) throw std::invalid_argument("--t cannot exceed --n");
    if (spec.oracle_kind == "planted") return make_planted(spec.n, spec.t, oseed);
    if (spec.oracle_kind == "clustered") return make_clustered(spec.n, spec.t, oseed);
    throw std::invalid_argument("oracle kind must be 'planted' or 'clustered'");
  }();
  const std::uint64_t n = o.domain_size();
  const std::uint64_t t = o.good_count();
  Instance inst{std::move(o), Preparation::uniform(n),
                static_cast<double>(t) / static_cast<double>(n), t, n};
  return inst;
}

double mean_of(const std::vector<std::uint64_t>& v) {
  double s = 0.0;
  for (auto x : v) s += static_cast<double>(x);
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double median_of(std::vector<std::uint64_t> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  if (v.size() % 2) return static_cast<double>(v[h]);
  return 0.5 * (static_cast<double>(v[h - 1]) + static_cast<double>(v[h]));
}

void write_rows(JsonWriter& w, const std::vector<Row>& rows, bool timings) {
  w.key("rows").begin_array();
  for (const Row& r : rows) {
    w.begin_object();
    w.key("trial").value(r.trial);
    w.key("outcome");
    switch (r.kind) {
      case Row::Kind::integer: w.value(static_cast<std::uint64_t>(r.outcome)); break;
      case Row::Kind::real: w.value(r.outcome); break;
      case Row::Kind::none: w.null_value(); break;
    }
    w.key("success").value(r.success);
    w.key("queries").value(r.queries);
    if (timings) w.key("wall_ms").value(r.wall_ms);
    w.end_object();
  }
  w.end_array();
}

std::string rows_csv(const std::vector<Row>& rows, bool timings) {
  std::string out = timings ? "trial,outcome,success,queries,wall_ms\n"
                            : "trial,outcome,success,queries\n";
  for (const Row& r : rows) {
    out += std::to_string(r.trial);
    out += ',';
    if (r.kind == Row::Kind::integer)
      out += std::to_string(static_cast<std::uint64_t>(r.outcome));
    else if (r.kind == Row::Kind::real)
      out += format_double(r.outcome);
    out += ',';
    out += r.success ? "1" : "0";
    out += ',';
    out += std::to_string(r.queries);
    if (timings) {
      out += ',';
      out += format_double(r.wall_ms);
    }
    out += '\n';
  }
  return out;
}

void write_spec(JsonWriter& w, const ExperimentSpec& spec, const Instance* inst) {
  w.key("spec").begin_object();
  w.key("algorithm").value(spec.algorithm);
  w.key("engine").value(spec.engine);
  if (spec.a) {
    w.key("a").value(*spec.a);
  } else if (spec.truth_table) {
    w.key("truth_table").value(*spec.truth_table);
    if (inst) w.key("n").value(inst->n);
  } else {
    w.key("n").value(spec.n);
    w.key("t").value(spec.t);
    w.key("oracle").value(spec.oracle_kind);
    w.key("oracle_seed")
        .value(spec.oracle_seed ? *spec.oracle_seed : Rng::mix(spec.seed, 0x6f7261636cULL));
  }
  if (spec.m) w.key("m").value(*spec.m);
  if (spec.algorithm == "approx-count" || spec.algorithm == "opt-approx-count" ||
      spec.algorithm == "table")
    w.key("epsilon").value(spec.epsilon);
  if (spec.algorithm == "decide") w.key("t0").value(spec.t0);
  if (spec.algorithm == "count" || spec.algorithm == "estimate")
    w.key("k").value(static_cast<std::uint64_t>(spec.k));
  if (spec.algorithm == "search" || spec.algorithm == "heuristic")
    w.key("c").value(spec.growth);
  if (spec.algorithm == "derandomize") w.key("method").value(spec.method);
  if (spec.algorithm == "heuristic") {
    w.key("heuristic").value(spec.heuristic);
    w.key("r_size").value(spec.r_size);
    w.key("h").value(spec.h);
  }
  if (spec.max_queries) w.key("max_queries").value(*spec.max_queries);
  w.key("trials").value(spec.trials);
  w.key("seed").value(spec.seed);
  w.end_object();
}

ExperimentReport finalize(const ExperimentSpec& spec, const Instance* inst,
                          const std::vector<Row>& rows, const Bound& bound) {
  std::vector<std::uint64_t> queries;
  std::uint64_t successes = 0;
  std::uint64_t bound_hits = 0;
  std::uint64_t exhausted = 0;
  for (const Row& r : rows) {
    queries.push_back(r.queries);
    successes += r.success;
    bound_hits += r.bound_ok;
    exhausted += r.exhausted;
  }

  JsonWriter w;
  w.begin_object();
  w.key("schema").value(1);
  w.key("algorithm").value(spec.algorithm);
  write_spec(w, spec, inst);
  write_rows(w, rows, spec.timings);
  w.key("summary").begin_object();
  w.key("trials").value(static_cast<std::uint64_t>(rows.size()));
  w.key("success_count").value(successes);
  w.key("success_frequency")
      .value(rows.empty() ? 0.0 : static_cast<double>(successes) / rows.size());
  w.key("mean_queries").value(mean_of(queries));
  w.key("median_queries").value(median_of(queries));
  w.key("bound_label").value(bound.label);
  w.key("theoretical_bound").value(bound.value);
  w.key("bound_satisfaction_frequency")
      .value(rows.empty() ? 0.0 : static_cast<double>(bound_hits) / rows.size());
  w.end_object();
  w.end_object();

  ExperimentReport rep;
  rep.json = w.str() + "\n";
  rep.csv = rows_csv(rows, spec.timings);
  if (!rows.empty() && exhausted == rows.size()) rep.exit_code = 3;
  return rep;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from) {
  return std::chrono::duration<double, std::milli>(Clock::now() - from).count();
}

ExperimentReport run_table(const ExperimentSpec& spec);

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  const Engine engine = parse_engine(spec.engine);
  if (spec.trials == 0) throw std::invalid_argument("--trials must be positive");

  if (spec.algorithm == "table") return run_table(spec);

  // heuristic instances carry their own oracle construction
  if (spec.algorithm == "heuristic") {
    HeuristicSpec hs;
    hs.n = spec.n;
    hs.t = spec.t;
    hs.r_size = spec.r_size ? spec.r_size : spec.n;
    hs.h = spec.h;
    hs.x0 = spec.x0;
    hs.seed = spec.oracle_seed ? *spec.oracle_seed : Rng::mix(spec.seed, 0x6f7261636cULL);
    hs.truth_table_path = spec.truth_table;
    HeuristicInstance hinst = make_heuristic(spec.heuristic, hs);
    const HeuristicStats st = stats(hinst.heuristic, hinst.oracle);

    Bound bound;
    bound.label = "expected_queries_scale_sqrt_R_over_h";
    bound.value = st.h_f == 0 ? 0.0
                              : std::sqrt(static_cast<double>(hinst.heuristic.seed_space_size) /
                                          static_cast<double>(st.h_f));

    std::vector<Row> rows;
    for (std::uint64_t i = 0; i < spec.trials; ++i) {
      const auto t0 = Clock::now();
      Oracle f = hinst.oracle.clone_with_fresh_counter();
      QSearchConfig cfg;
      cfg.growth = spec.growth;
      cfg.engine = engine;
      cfg.max_total_queries = spec.max_queries.value_or(kDefaultQueryCap);
      Rng rng(Rng::mix(spec.seed, i));
      const HeuristicSearchResult res = heuristic_search(hinst.heuristic, f, cfg, rng);
      Row row;
      row.trial = i;
      row.queries = res.queries;
      if (res.solution) {
        row.kind = Row::Kind::integer;
        row.outcome = static_cast<double>(*res.solution);
        row.success = hinst.oracle.peek(*res.solution);
        row.bound_ok = static_cast<double>(res.queries) <= kQuerySlack * bound.value;
      } else {
        row.exhausted = true;
      }
      row.wall_ms = elapsed_ms(t0);
      rows.push_back(row);
    }
    Instance shim{hinst.oracle, Preparation::uniform(hinst.oracle.domain_size()), 0, 0,
                  hinst.oracle.domain_size()};
    return finalize(spec, &shim, rows, bound);
  }

  Instance inst = build_instance(spec);
  const double a = inst.a_true;
  const double t_true = static_cast<double>(inst.t_true);
  const double n = static_cast<double>(inst.n);

  Bound bound;
  std::vector<Row> rows;

  for (std::uint64_t i = 0; i < spec.trials; ++i) {
    const auto tstart = Clock::now();
    Oracle f = inst.oracle.clone_with_fresh_counter();
    Rng rng(Rng::mix(spec.seed, i));
    Row row;
    row.trial = i;

    if (spec.algorithm == "search") {
      bound.label = "expected_queries_scale_sqrt_N_over_t";
      bound.value = std::sqrt(n / std::max(t_true, 1.0));
      QSearchConfig cfg;
      cfg.growth = spec.growth;
      cfg.engine = engine;
      cfg.max_total_queries = spec.max_queries.value_or(kDefaultQueryCap);
      const QSearchResult res = qsearch(inst.prep, f, cfg, rng);
      row.queries = res.queries;
      if (res.found) {
        row.kind = Row::Kind::integer;
        row.outcome = static_cast<double>(*res.found);
        row.success = inst.oracle.peek(*res.found);
        row.bound_ok = static_cast<double>(res.queries) <= kQuerySlack * bound.value;
      } else {
        row.exhausted = true;
      }
    } else if (spec.algorithm == "amplify") {
      if (a <= 0.0) throw std::invalid_argument("amplify requires a > 0");
      bound.label = "success_probability_floor_max_1ma_a";
      bound.value = std::max(1.0 - a, a);
      const AmplifyResult res = amplify_known_a(inst.prep, f, a, rng, engine);
      row.kind = Row::Kind::integer;
      row.outcome = static_cast<double>(res.outcome);
      row.success = res.good;
      row.bound_ok = res.good;
      row.queries = res.queries;
    } else if (spec.algorithm == "derandomize") {
      if (a <= 0.0 || a >= 1.0)
        throw std::invalid_argument("derandomize requires 0 < a < 1");
      if (engine != Engine::exact)
        throw std::invalid_argument("derandomize runs on the exact engine");
      bound.label = "success_probability_floor_certainty";
      bound.value = 1.0 - 1e-8;
      const DerandomizeResult res =
          spec.method == "phase" ? derandomize_phase(inst.prep, f, a, rng)
          : spec.method == "rescale"
              ? derandomize_rescale(inst.prep, f, a, rng)
              : throw std::invalid_argument("method must be 'rescale' or 'phase'");
      row.kind = Row::Kind::integer;
      row.outcome = static_cast<double>(res.outcome);
      row.success = res.good;
      row.bound_ok = res.good && res.final_bad_probability < 1e-8;
      row.queries = res.queries;
    } else if (spec.algorithm == "estimate") {
      if (!spec.m) throw std::invalid_argument("estimate requires --m");
      const std::uint64_t m = *spec.m;
      bound.label = "amp_error_bound_2pik_sqrt_a1ma_over_M_plus_k2pi2_over_M2";
      bound.value = 2.0 * kPi * spec.k * std::sqrt(a * (1.0 - a)) / m +
                    static_cast<double>(spec.k) * spec.k * kPi * kPi / (m * m);
      EstAmpOptions opts;
      opts.engine = engine;
      const EstAmpResult res = est_amp(inst.prep, f, m, rng, opts);
      row.kind = Row::Kind::real;
      row.outcome = res.a_tilde;
      row.success = std::abs(res.a_tilde - a) <= bound.value;
      row.bound_ok = row.success;
      row.queries = m;
    } else if (spec.algorithm == "count") {
      const std::uint64_t m = spec.m.value_or(ceil_sqrt_u64(inst.n));
      const std::uint64_t before = f.queries();
      const double tp = count(f, m, rng, {engine});
      const std::uint64_t tt = round_count(tp);
      row.kind = Row::Kind::integer;
      row.outcome = static_cast<double>(tt);
      row.queries = f.queries() - before;
      if (spec.m) {
        bound.label = "count_error_bound_2pik_sqrt_tNmt_over_M_plus_pi2k2N_over_M2";
        bound.value = 2.0 * kPi * spec.k * std::sqrt(t_true * (n - t_true)) / m +
                      kPi * kPi * spec.k * spec.k * n / (static_cast<double>(m) * m);
        row.success = std::abs(tp - t_true) <= bound.value;
      } else {
        bound.label = "count_std_error_bound_2pi_sqrt_tNmt_over_N_plus_11";
        bound.value = 2.0 * kPi * std::sqrt(t_true * (n - t_true) / n) + 11.0;
        row.success = std::abs(static_cast<double>(tt) - t_true) < bound.value;
      }
      row.bound_ok = row.success;
    } else if (spec.algorithm == "approx-count") {
      bound.label = "relative_error_eps_t";
      bound.value = spec.epsilon * t_true;
      ApproxCountOptions opts;
      opts.engine = engine;
      opts.rough_from_qsearch = spec.rough_from_qsearch;
      const CountResult res = approx_count(f, spec.epsilon, rng, opts);
      row.kind = Row::Kind::integer;
      row.outcome = static_cast<double>(res.t_tilde);
      row.success = std::abs(static_cast<double>(res.t_tilde) - t_true) <= bound.value;
      row.bound_ok = row.success;
      row.queries = res.queries;
    } else if (spec.algorithm == "opt-approx-count") {
      bound.label = "relative_error_eps_t";
      bound.value = spec.epsilon * t_true;
      const OptCountResult res = opt_approx_count(f, spec.epsilon, rng, {engine});
      row.kind = Row::Kind::integer;
      row.outcome = static_cast<double>(res.count.t_tilde);
      row.success =
          std::abs(static_cast<double>(res.count.t_tilde) - t_true) <= bound.value;
      row.bound_ok = row.success;
      row.queries = res.count.queries;
    } else if (spec.algorithm == "exact-count") {
      bound.label = "exact_match";
      bound.value = 0.0;
      const CountResult res = exact_count(f, rng, {engine});
      row.kind = Row::Kind::integer;
      row.outcome = static_cast<double>(res.t_tilde);
      row.success = res.t_tilde == inst.t_true;
      row.bound_ok = row.success;
      row.queries = res.queries;
    } else if (spec.algorithm == "decide") {
      if (inst.t_true != 0 && inst.t_true != spec.t0)
        throw std::invalid_argument("decide: the oracle violates the {0, t0} promise");
      bound.label = "expected_queries_scale_sqrt_N_over_t0";
      bound.value = std::sqrt(n / static_cast<double>(spec.t0));
      const DecideResult res = decide_zero_or_t0(f, spec.t0, rng, {engine});
      if (res.witness) {
        row.kind = Row::Kind::integer;
        row.outcome = static_cast<double>(*res.witness);
      }
      row.success = res.is_t0 == (inst.t_true != 0) &&
                    (!res.witness || inst.oracle.peek(*res.witness));
      row.bound_ok = row.success;
      row.queries = res.queries;
    } else {
      throw std::invalid_argument("unknown algorithm '" + spec.algorithm + "'");
    }

    row.wall_ms = elapsed_ms(tstart);
    rows.push_back(row);
  }

  return finalize(spec, &inst, rows, bound);
}

namespace {

// The complexity-table report: measured query means next to the paper's
// query scales, evaluated numerically per (N, t, eps).
ExperimentReport run_table(const ExperimentSpec& spec) {
  const Engine engine = parse_engine(spec.engine);
  const std::vector<std::uint64_t> ts =
      spec.t_list.empty() ? std::vector<std::uint64_t>{1, spec.n / 4} : spec.t_list;

  JsonWriter w;
  w.begin_object();
  w.key("schema").value(1);
  w.key("algorithm").value("table");
  w.key("spec").begin_object();
  w.key("engine").value(spec.engine);
  w.key("n").value(spec.n);
  w.key("t_values").begin_array();
  for (auto t : ts) w.value(t);
  w.end_array();
  w.key("epsilon").value(spec.epsilon);
  w.key("trials").value(spec.trials);
  w.key("seed").value(spec.seed);
  w.end_object();

  w.key("rows").begin_array();
  std::string csv = "problem,t,measured_mean_queries,quantum_scale,classical_scale\n";
  const double n = static_cast<double>(spec.n);
  std::uint64_t stream = 0;

  for (const std::uint64_t t : ts) {
    if (t == 0 || t > spec.n)
      throw std::invalid_argument("table: each t must satisfy 1 <= t <= N");
    Oracle base = make_planted(spec.n, t, Rng::mix(spec.seed, 0x7461626c65ULL + t));
    const double td = static_cast<double>(t);

    const auto mean_queries = [&](auto&& run_one) {
      double total = 0.0;
      for (std::uint64_t i = 0; i < spec.trials; ++i) {
        Oracle f = base.clone_with_fresh_counter();
        Rng rng(Rng::mix(spec.seed, ++stream * 1000003 + i));
        total += static_cast<double>(run_one(f, rng));
      }
      return total / static_cast<double>(spec.trials);
    };

    const auto emit = [&](const char* problem, double measured, double quantum,
                          std::optional<double> classical) {
      w.begin_object();
      w.key("problem").value(problem);
      w.key("t").value(t);
      w.key("measured_mean_queries").value(measured);
      w.key("quantum_scale").value(quantum);
      w.key("classical_scale");
      if (classical)
        w.value(*classical);
      else
        w.null_value();
      w.end_object();
      csv += problem;
      csv += ',' + std::to_string(t) + ',' + format_double(measured) + ',' +
             format_double(quantum) + ',' + (classical ? format_double(*classical) : "") +
             '\n';
    };

    emit("decision", mean_queries([&](Oracle& f, Rng& rng) {
           return decide_zero_or_t0(f, t, rng, {engine}).queries;
         }),
         std::sqrt(n / td), n - td + 1.0);

    emit("searching", mean_queries([&](Oracle& f, Rng& rng) {
           QSearchConfig cfg;
           cfg.engine = engine;
           cfg.max_total_queries = kDefaultQueryCap;
           return qsearch(Preparation::uniform(spec.n), f, cfg, rng).queries;
         }),
         std::sqrt(n / (td + 1.0)), n / (td + 1.0));

    emit("counting_error_sqrt_t", mean_queries([&](Oracle& f, Rng& rng) {
           return count_std(f, rng, {engine}).queries;
         }),
         std::sqrt(n), std::nullopt);

    emit("counting_accuracy_eps", mean_queries([&](Oracle& f, Rng& rng) {
           return opt_approx_count(f, spec.epsilon, rng, {engine}).count.queries;
         }),
         opt_count_cost_scale(spec.n, t, spec.epsilon),
         n / ((td + 1.0) * spec.epsilon * spec.epsilon));

    emit("exact_counting", mean_queries([&](Oracle& f, Rng& rng) {
           return exact_count(f, rng, {engine}).queries;
         }),
         std::sqrt((td + 1.0) * (n - td + 1.0)), n);
  }
  w.end_array();
  w.end_object();

  ExperimentReport rep;
  rep.json = w.str() + "\n";
  rep.csv = csv;
  return rep;
}

}  // namespace

}  // namespace qamp::cli
