#include "qamp/counting.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qamp/tolerances.hpp"

namespace qamp {

namespace {

constexpr double kPi = std::numbers::pi;

// Named algorithm constants; all moduli are computed in double precision and
// then ceiled.
constexpr double kApproxFinalFactor = 20.0 * kPi * kPi;  // M = ceil(20 pi^2 / eps * 2^l)
constexpr double kApproxLoopStop = 2.0;                  // loop until 2^l >= 2 sqrt(N)
constexpr double kExactRoughFactor = 14.0 * kPi;         // ceil(14 pi sqrt(N))
constexpr double kExactFinalFactor = 30.0;               // ceil(30 sqrt((t'+1)(N-t'+1)))
constexpr double kOptL1Factor = 9.0 * kPi;               // L1 = ceil(9 pi * 2^l)
constexpr unsigned kOptL2Confidence = 21;                // k in Appendix A step 2
constexpr double kOptL2Factor = 8.0 * kPi * kOptL2Confidence;  // c = 8 pi k
constexpr double kOptFinalFactor = 10.0 * kPi;           // Count(f, ceil(10 pi M))
constexpr std::uint64_t kRoughSearchMultiplier = 2;      // remark variant scaling

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  while (r * r < n) ++r;
  return r;
}

std::uint64_t ceil_to_u64(double v) { return static_cast<std::uint64_t>(std::ceil(v)); }

// The doubling loop of Approx_Count steps 1-4; returns the final 2^l.
std::uint64_t rough_doubling_loop(Oracle& f, Rng& rng, const CountOptions& options) {
  const double n = static_cast<double>(f.domain_size());
  const double stop = kApproxLoopStop * std::sqrt(n);
  for (unsigned l = 1;; ++l) {
    if (l >= 62) throw std::logic_error("approx_count: doubling loop overflow");
    const std::uint64_t two_l = std::uint64_t{1} << l;
    const double t_prime = count(f, two_l, rng, options);
    if (t_prime == 0.0 && static_cast<double>(two_l) < stop) continue;
    return two_l;
  }
}

}  // namespace

double count(Oracle& f, std::uint64_t m, Rng& rng, const CountOptions& options) {
  const Preparation prep = Preparation::uniform(f.domain_size());
  EstAmpOptions opts;
  opts.engine = options.engine;
  const EstAmpResult est = est_amp(prep, f, m, rng, opts);
  return static_cast<double>(f.domain_size()) * est.a_tilde;
}

std::uint64_t round_count(double t_prime) {
  if (t_prime < 0.0) throw std::invalid_argument("round_count: negative estimate");
  const double fl = std::floor(t_prime);
  const double frac = t_prime - fl;
  return static_cast<std::uint64_t>(fl) + (frac > 0.5 ? 1 : 0);
}

std::uint64_t even_up(std::uint64_t m) { return m + (m & 1); }

CountResult count_std(Oracle& f, Rng& rng, const CountOptions& options) {
  const std::uint64_t start = f.queries();
  const std::uint64_t m = ceil_sqrt(f.domain_size());
  CountResult res;
  res.t_prime = count(f, m, rng, options);
  res.t_tilde = round_count(res.t_prime);
  res.m = m;
  res.k = 1;
  res.queries = f.queries() - start;
  return res;
}

CountResult approx_count(Oracle& f, double eps, Rng& rng,
                         const ApproxCountOptions& options) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("approx_count: accuracy must satisfy 0 < eps <= 1");
  const std::uint64_t start = f.queries();
  const CountOptions copts{options.engine};

  std::uint64_t rough;
  if (options.rough_from_qsearch) {
    QSearchConfig qc;
    qc.engine = options.engine;
    qc.max_total_queries =
        ceil_to_u64(2.0 * kApproxLoopStop * std::sqrt(static_cast<double>(f.domain_size())));
    Rng search_rng(Rng::mix(rng.seed(), rng.next_u64()));
    const QSearchResult qr = qsearch(Preparation::uniform(f.domain_size()), f, qc, search_rng);
    rough = kRoughSearchMultiplier * std::max<std::uint64_t>(qr.final_m, 1);
  } else {
    rough = rough_doubling_loop(f, rng, copts);
  }

  const std::uint64_t m =
      even_up(ceil_to_u64(kApproxFinalFactor / eps * static_cast<double>(rough)));
  CountResult res;
  res.t_prime = count(f, m, rng, copts);
  res.t_tilde = round_count(res.t_prime);
  res.m = m;
  res.k = 1;
  res.queries = f.queries() - start;
  return res;
}

CountResult exact_count(Oracle& f, Rng& rng, const CountOptions& options) {
  return exact_count(f, rng, options, nullptr);
}

CountResult exact_count(Oracle& f, Rng& rng, const CountOptions& options,
                        ExactCountTrace* trace) {
  const std::uint64_t start = f.queries();
  const double n = static_cast<double>(f.domain_size());
  const std::uint64_t rough_m = even_up(ceil_to_u64(kExactRoughFactor * std::sqrt(n)));
  const double t1 = count(f, rough_m, rng, options);
  const double t2 = count(f, rough_m, rng, options);
  const auto final_m = [n](double t_rough) {
    return ceil_to_u64(kExactFinalFactor * std::sqrt((t_rough + 1.0) * (n - t_rough + 1.0)));
  };
  const std::uint64_t m1 = final_m(t1);
  const std::uint64_t m2 = final_m(t2);
  if (trace) *trace = {t1, t2, m1, m2};

  const std::uint64_t m = even_up(std::min(m1, m2));
  CountResult res;
  res.t_prime = count(f, m, rng, options);
  res.t_tilde = round_count(res.t_prime);
  res.m = m;
  res.k = 1;
  res.queries = f.queries() - start;
  return res;
}

DecideResult decide_zero_or_t0(Oracle& f, std::uint64_t t0, Rng& rng,
                               const CountOptions& options) {
  const std::uint64_t n = f.domain_size();
  if (t0 == 0 || t0 > n)
    throw std::invalid_argument("decide_zero_or_t0: t0 must satisfy 1 <= t0 <= N");
  const std::uint64_t start = f.queries();
  const Preparation prep = Preparation::uniform(n);
  DecideResult res;

  if (t0 == n) {  // a = 1: measuring A|0> settles the promise with one query
    const std::uint64_t z = options.engine == Engine::exact
                                ? measure(prep.initial_state(), rng)
                                : rng.next_below(n);
    if (f.evaluate(z)) {
      res.is_t0 = true;
      res.witness = z;
    }
    res.queries = f.queries() - start;
    return res;
  }

  const double a0 = static_cast<double>(t0) / static_cast<double>(n);
  const double theta0 = std::asin(std::sqrt(a0));
  const double m_tilde = kPi / (4.0 * theta0) - 0.5;
  const bool plain = std::abs(m_tilde - std::round(m_tilde)) <= tolerances().integer_m_tilde;
  const auto k = plain ? static_cast<std::uint64_t>(std::llround(m_tilde))
                       : static_cast<std::uint64_t>(std::floor(m_tilde));
  double phi = kPi;
  double phi_prime = kPi;
  if (!plain) std::tie(phi, phi_prime) = solve_final_phases(theta0, k);

  double good_p;
  std::optional<StateVector> final_state;
  if (options.engine == Engine::exact) {
    StateVector s = prep.initial_state();
    const QOperator q_pi(prep, f, kPi, kPi);
    for (std::uint64_t i = 0; i < k; ++i) q_pi.apply_in_place(s);
    if (!plain) {
      const QOperator q_final(prep, f, phi, phi_prime);
      q_final.apply_in_place(s);
    }
    good_p = 0.0;
    for (std::size_t x = 0; x < s.dim(); ++x)
      if (f.peek(x)) good_p += s.probability(x);
    final_state = std::move(s);
  } else {
    const double a_true = static_cast<double>(f.good_count()) / static_cast<double>(n);
    if (a_true <= 0.0) {
      good_p = 0.0;
    } else if (a_true >= 1.0) {
      good_p = 1.0;
    } else {
      cdouble alpha = 1.0;
      cdouble beta = 1.0;
      for (std::uint64_t i = 0; i < k; ++i)
        std::tie(alpha, beta) = q_coefficient_action(alpha, beta, a_true, kPi, kPi);
      if (!plain)
        std::tie(alpha, beta) = q_coefficient_action(alpha, beta, a_true, phi, phi_prime);
      good_p = std::norm(alpha) * a_true;
    }
    f.charge(k + (plain ? 0 : 1));
  }

  const double certainty = tolerances().certainty;
  if (good_p <= certainty) {
    // Under the promise, a vanished good component means t = 0.
    res.queries = f.queries() - start;
    return res;
  }
  if (good_p < 1.0 - certainty)
    throw PromiseViolation("decide_zero_or_t0: mixed final state (good probability " +
                           std::to_string(good_p) + "); t is neither 0 nor t0");

  const std::uint64_t z = options.engine == Engine::exact ? measure(*final_state, rng)
                                                          : f.sample_good(rng);
  if (!f.evaluate(z))
    throw PromiseViolation("decide_zero_or_t0: measured a bad element after certainty");
  res.is_t0 = true;
  res.witness = z;
  res.queries = f.queries() - start;
  return res;
}

double opt_count_cost_scale(std::uint64_t n, std::uint64_t t, double eps) {
  const double div = std::floor(eps * static_cast<double>(t)) + 1.0;
  const double nd = static_cast<double>(n);
  const double td = static_cast<double>(t);
  return std::sqrt(nd / div) + std::sqrt(td * (nd - td)) / div;
}

OptCountResult opt_approx_count(Oracle& f, double eps, Rng& rng,
                                const CountOptions& options) {
  const std::uint64_t n = f.domain_size();
  const double nd = static_cast<double>(n);
  if (!(eps > 1.0 / (3.0 * nd) && eps <= 1.0))
    throw std::invalid_argument("opt_approx_count: requires 1/(3N) < eps <= 1");
  const std::uint64_t start = f.queries();

  OptCountResult res;

  // Step 1: L1 ~ sqrt(N/(t+1)) from the doubling loop.
  const std::uint64_t two_l = rough_doubling_loop(f, rng, options);
  res.plan.l1 = ceil_to_u64(kOptL1Factor * static_cast<double>(two_l));

  // Step 2: L2 ~ sqrt((N-t)/(eps N)) from two counts of the negation.
  const std::uint64_t m_neg = even_up(ceil_to_u64(kOptL2Factor / std::sqrt(eps)));
  Oracle neg = f.negate();
  const double r1 = count(neg, m_neg, rng, options);
  const double r2 = count(neg, m_neg, rng, options);
  const double r_tilde =
      std::min(std::sqrt(r1 / (eps * nd)), std::sqrt(r2 / (eps * nd)));
  res.plan.l2 = ceil_to_u64(2.0 * r_tilde) + 1;

  // Steps 3-5.
  res.plan.m1 = ceil_to_u64(static_cast<double>(res.plan.l1) *
                            (1.0 + static_cast<double>(res.plan.l2)) / std::sqrt(eps));
  if (static_cast<double>(res.plan.m1) > std::sqrt(nd)) {
    const std::uint64_t rough_m = even_up(ceil_to_u64(kExactRoughFactor * std::sqrt(nd)));
    const double t1 = count(f, rough_m, rng, options);
    const double t2 = count(f, rough_m, rng, options);
    const auto approx = [nd](double t_rough) {
      return ceil_to_u64(kExactFinalFactor *
                         std::sqrt((t_rough + 1.0) * (nd - t_rough + 1.0)));
    };
    res.plan.m2 = std::min(approx(t1), approx(t2));
  }
  res.plan.m = res.plan.m2 ? std::min(res.plan.m1, *res.plan.m2) : res.plan.m1;

  // Step 6.
  const std::uint64_t final_m =
      even_up(ceil_to_u64(kOptFinalFactor * static_cast<double>(res.plan.m)));
  res.count.t_prime = count(f, final_m, rng, options);
  res.count.t_tilde = round_count(res.count.t_prime);
  res.count.m = final_m;
  res.count.k = 1;
  res.count.queries = f.queries() - start;
  res.plan.s_scale = opt_count_cost_scale(n, res.count.t_tilde, eps);
  return res;
}

}  // namespace qamp
