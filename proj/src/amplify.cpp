#include "qamp/amplify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qamp/tolerances.hpp"

namespace qamp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_phase(double phase, const char* what) {
  if (!(phase >= 0.0 && phase < 2.0 * kPi))
    throw std::invalid_argument(std::string(what) + ": phase must lie in [0, 2pi)");
}

double clamp_probability(double a) {
  const double eps = tolerances().endpoint_clamp;
  if (a < eps) return 0.0;
  if (a > 1.0 - eps) return 1.0;
  return a;
}

double theta_from_a(double a) { return std::asin(std::sqrt(a)); }

// One-draw sampler for closed-form measurements: the good/bad branch is
// decided by u < p_good and the element within the branch by the rescaled
// residue of the same draw, so exact and analytic transcripts stay aligned
// in draw counts across embedding variants.
class AnalyticSampler {
 public:
  AnalyticSampler(const Preparation& prep, const Oracle& chi, const AmplitudeSpec& spec)
      : chi_(&chi), spec_(&spec), uniform_(prep.is_uniform()), n_(prep.dim()) {}

  std::uint64_t sample(double p_good, Rng& rng, bool& good) const {
    const double u = rng.next_double();
    good = u < p_good;
    const double residue = good ? (p_good > 0.0 ? u / p_good : 0.0)
                                : (p_good < 1.0 ? (u - p_good) / (1.0 - p_good) : 0.0);
    return good ? good_element(residue) : bad_element(residue);
  }

 private:
  std::uint64_t good_element(double residue) const {
    if (uniform_) {
      const auto& goods = chi_->good_set();
      auto k = static_cast<std::uint64_t>(residue * static_cast<double>(goods.size()));
      if (k >= goods.size()) k = goods.size() - 1;
      return goods[k];
    }
    return walk(*spec_->good_proj, residue * spec_->a);
  }

  std::uint64_t bad_element(double residue) const {
    if (uniform_) {
      const auto& goods = chi_->good_set();
      const std::uint64_t bad = n_ - goods.size();
      auto k = static_cast<std::uint64_t>(residue * static_cast<double>(bad));
      if (k >= bad) k = bad - 1;
      // k-th element of the complement, by rank over the sorted good set
      std::uint64_t lo = 0, hi = n_ - 1;
      while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        const auto goods_leq = static_cast<std::uint64_t>(
            std::upper_bound(goods.begin(), goods.end(), mid) - goods.begin());
        if ((mid + 1) - goods_leq < k + 1)
          lo = mid + 1;
        else
          hi = mid;
      }
      return lo;
    }
    return walk(*spec_->bad_proj, residue * (1.0 - spec_->a));
  }

  static std::uint64_t walk(const StateVector& proj, double target) {
    double acc = 0.0;
    std::uint64_t last = 0;
    for (std::uint64_t i = 0; i < proj.dim(); ++i) {
      const double p = proj.probability(i);
      if (p > 0.0) last = i;
      acc += p;
      if (target < acc) return i;
    }
    return last;
  }

  const Oracle* chi_;
  const AmplitudeSpec* spec_;
  bool uniform_;
  std::uint64_t n_;
};

}  // namespace

// --- Preparation ---------------------------------------------------------

Preparation Preparation::unitary(Unitary a) {
  Preparation p;
  p.dim_ = a.dim();
  p.matrix_ = std::move(a);
  return p;
}

Preparation Preparation::uniform(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Preparation::uniform: empty domain");
  Preparation p;
  p.dim_ = n;
  p.uniform_ = true;
  return p;
}

Preparation Preparation::from_state(StateVector psi) {
  const double norm = psi.norm_sq();
  if (std::abs(norm - 1.0) > tolerances().measure_norm)
    throw std::invalid_argument("Preparation::from_state: state is not normalized");
  Preparation p;
  p.dim_ = psi.dim();
  p.psi_ = std::move(psi);
  return p;
}

const Unitary& Preparation::matrix() const {
  if (matrix_) return *matrix_;
  if (uniform_) {
    if (dim_ > kMaxStateDim)
      throw std::logic_error("Preparation: uniform matrix beyond the dense engine cap");
    const auto n = static_cast<std::size_t>(dim_);
    const bool pow2 = std::has_single_bit(dim_);
    const_cast<Preparation*>(this)->matrix_ =
        pow2 ? walsh_hadamard(static_cast<unsigned>(std::countr_zero(dim_)))
             : fourier(n);
    return *matrix_;
  }
  throw std::logic_error("Preparation: no unitary available for a bare-state preparation");
}

StateVector Preparation::initial_state() const {
  if (psi_) return *psi_;
  if (dim_ > kMaxStateDim)
    throw std::logic_error("Preparation: statevector beyond the dense engine cap");
  const auto n = static_cast<std::size_t>(dim_);
  if (uniform_ && !matrix_) {
    std::vector<cdouble> amps(n, 1.0 / std::sqrt(static_cast<double>(n)));
    return StateVector(n, std::move(amps));
  }
  return apply(matrix(), StateVector(n));
}

cdouble Preparation::amplitude(std::uint64_t x) const {
  if (x >= dim_) throw std::out_of_range("Preparation::amplitude: index out of range");
  if (uniform_ && !psi_) return 1.0 / std::sqrt(static_cast<double>(dim_));
  if (psi_) return psi_->amp(static_cast<std::size_t>(x));
  return matrix()(static_cast<std::size_t>(x), 0);
}

// --- decomposition -------------------------------------------------------

AmplitudeSpec decompose(const Preparation& prep, const Oracle& chi) {
  if (prep.dim() != chi.domain_size())
    throw std::invalid_argument("decompose: preparation and oracle dimensions differ");
  AmplitudeSpec spec;
  if (prep.is_uniform() && prep.dim() > kMaxStateDim) {
    spec.a = clamp_probability(static_cast<double>(chi.good_count()) /
                               static_cast<double>(prep.dim()));
    spec.theta_a = theta_from_a(spec.a);
    return spec;
  }
  StateVector psi = prep.initial_state();
  const std::size_t d = psi.dim();
  StateVector good(d, std::vector<cdouble>(d));
  StateVector bad(d, std::vector<cdouble>(d));
  for (std::size_t x = 0; x < d; ++x) {
    if (chi.peek(x))
      good.set_amp(x, psi.amp(x));
    else
      bad.set_amp(x, psi.amp(x));
  }
  spec.a = clamp_probability(good.norm_sq());
  spec.theta_a = theta_from_a(spec.a);
  spec.good_proj = std::move(good);
  spec.bad_proj = std::move(bad);
  return spec;
}

// --- the iterate Q -------------------------------------------------------

QOperator::QOperator(const Preparation& prep, const Oracle& chi, double phi,
                     double phi_prime)
    : psi_(prep.initial_state()), chi_(chi), phi_(phi), phi_prime_(phi_prime) {
  check_phase(phi, "QOperator");
  check_phase(phi_prime, "QOperator");
  if (prep.dim() != chi.domain_size())
    throw std::invalid_argument("QOperator: preparation and oracle dimensions differ");
  good_.resize(psi_.dim());
  for (std::size_t x = 0; x < psi_.dim(); ++x) good_[x] = chi.peek(x);
}

void QOperator::apply_in_place(StateVector& s, bool charge_query) const {
  if (s.dim() != psi_.dim())
    throw std::invalid_argument("QOperator: state dimension mismatch");
  const cdouble mark = std::polar(1.0, phi_prime_);
  const cdouble w = std::polar(1.0, phi_) - 1.0;
  cdouble inner = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const cdouble v = good_[i] ? mark * s.amp(i) : s.amp(i);
    s.set_amp(i, v);
    inner += std::conj(psi_.amp(i)) * v;
  }
  const cdouble shift = w * inner;
  for (std::size_t i = 0; i < s.dim(); ++i)
    s.set_amp(i, -(s.amp(i) + shift * psi_.amp(i)));
  if (charge_query) chi_.charge(1);
}

StateVector QOperator::apply(const StateVector& s, bool charge_query) const {
  StateVector out = s;
  apply_in_place(out, charge_query);
  return out;
}

const Unitary& QOperator::matrix() const {
  if (!matrix_) {
    const std::size_t d = psi_.dim();
    const cdouble mark = std::polar(1.0, phi_prime_);
    const cdouble w = std::polar(1.0, phi_) - 1.0;
    std::vector<cdouble> entries(d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        cdouble v = w * psi_.amp(r) * std::conj(psi_.amp(c));
        if (r == c) v += 1.0;
        entries[r * d + c] = -(good_[c] ? v * mark : v);
      }
    matrix_ = Unitary(d, std::move(entries));
  }
  return *matrix_;
}

QOperator build_q(const Preparation& prep, const Oracle& chi, double phi,
                  double phi_prime) {
  return QOperator(prep, chi, phi, phi_prime);
}

Unitary q_matrix_from_product(const Unitary& a, const Oracle& chi, double phi,
                              double phi_prime) {
  check_phase(phi, "q_matrix_from_product");
  const std::size_t d = a.dim();
  Unitary s0(d);
  s0.at(0, 0) = std::polar(1.0, phi);
  const Unitary product =
      multiply(multiply(multiply(a, s0), a.dagger()), build_s_chi(chi, phi_prime));
  std::vector<cdouble> entries = product.entries();
  for (cdouble& e : entries) e = -e;
  return Unitary(d, std::move(entries));
}

std::pair<cdouble, cdouble> q_coefficient_action(cdouble alpha, cdouble beta, double a,
                                                 double phi, double phi_prime) {
  const cdouble ephi = std::polar(1.0, phi);
  const cdouble mark = std::polar(1.0, phi_prime);
  const cdouble one_minus = 1.0 - ephi;
  const cdouble g = mark * (one_minus * a - 1.0) * alpha + one_minus * (1.0 - a) * beta;
  const cdouble b = mark * one_minus * a * alpha - (one_minus * a + ephi) * beta;
  return {g, b};
}

Eq8Coefficients amplitude_after(std::uint64_t j, const AmplitudeSpec& spec) {
  const double ang = (2.0 * static_cast<double>(j) + 1.0) * spec.theta_a;
  const double s = std::sin(ang);
  const double c = std::cos(ang);
  Eq8Coefficients out;
  out.success_probability = s * s;
  if (spec.a <= 0.0) {
    out.good = 0.0;
    out.bad = 1.0;
  } else if (spec.a >= 1.0) {
    out.good = s;
    out.bad = 0.0;
  } else {
    out.good = s / std::sqrt(spec.a);
    out.bad = c / std::sqrt(1.0 - spec.a);
  }
  return out;
}

// --- amplification with known a ------------------------------------------

AmplifyResult amplify_known_a(const Preparation& prep, Oracle& chi, double a, Rng& rng,
                              Engine engine) {
  a = clamp_probability(a);
  if (a <= 0.0) throw std::invalid_argument("amplify_known_a: requires a > 0");
  if (a > 1.0) throw std::invalid_argument("amplify_known_a: a exceeds 1");
  const double theta = theta_from_a(a);
  const auto m = static_cast<std::uint64_t>(std::floor(kPi / (4.0 * theta)));
  const std::uint64_t start = chi.queries();

  AmplifyResult res;
  res.iterations = m;
  if (engine == Engine::exact) {
    StateVector s = prep.initial_state();
    const QOperator q(prep, chi, kPi, kPi);
    for (std::uint64_t i = 0; i < m; ++i) q.apply_in_place(s);
    res.outcome = measure(s, rng);
  } else {
    const AmplitudeSpec spec = decompose(prep, chi);
    chi.charge(m);
    const double p = amplitude_after(m, spec).success_probability;
    const AnalyticSampler sampler(prep, chi, spec);
    bool good = false;
    res.outcome = sampler.sample(p, rng, good);
  }
  res.good = chi.evaluate(res.outcome);
  res.queries = chi.queries() - start;
  return res;
}

// --- QSearch --------------------------------------------------------------

QSearchResult qsearch(const Preparation& prep, Oracle& chi, const QSearchConfig& config,
                      Rng& rng) {
  if (!(config.growth > 1.0 && config.growth < 2.0))
    throw std::invalid_argument("qsearch: growth constant must satisfy 1 < c < 2");
  if (prep.dim() != chi.domain_size())
    throw std::invalid_argument("qsearch: preparation and oracle dimensions differ");

  const std::uint64_t start = chi.queries();
  const auto spent = [&] { return chi.queries() - start; };
  const auto within_budget = [&](std::uint64_t more) {
    return !config.max_total_queries || spent() + more <= *config.max_total_queries;
  };
  constexpr double kScheduleCap = 4.611686018427387904e18;  // 2^62

  QSearchResult res;

  const bool exact = config.engine == Engine::exact;
  std::optional<StateVector> psi;
  std::optional<QOperator> q;
  std::optional<AmplitudeSpec> spec;
  std::optional<AnalyticSampler> sampler;
  if (exact) {
    psi = prep.initial_state();
    q.emplace(prep, chi, kPi, kPi);
  } else {
    spec = decompose(prep, chi);
    sampler.emplace(prep, chi, *spec);
  }

  for (std::uint64_t l = 1;; ++l) {
    res.rounds = l;
    const double schedule = std::ceil(std::pow(config.growth, static_cast<double>(l)));
    if (!(schedule < kScheduleCap)) break;  // schedule overflow: budget error
    const auto m = static_cast<std::uint64_t>(schedule);
    res.final_m = m;

    // classical sample from A|0>
    if (!within_budget(1)) break;
    std::uint64_t z;
    if (exact) {
      z = measure(*psi, rng);
    } else {
      bool good = false;
      z = sampler->sample(spec->a, rng, good);
    }
    if (chi.evaluate(z)) {
      res.found = z;
      break;
    }

    const std::uint64_t j = 1 + rng.next_below(m);
    if (!within_budget(j + 1)) break;
    if (exact) {
      StateVector s = *psi;
      for (std::uint64_t i = 0; i < j; ++i) q->apply_in_place(s);
      z = measure(s, rng);
    } else {
      chi.charge(j);
      bool good = false;
      z = sampler->sample(amplitude_after(j, *spec).success_probability, rng, good);
    }
    if (chi.evaluate(z)) {
      res.found = z;
      break;
    }
  }
  res.queries = spent();
  return res;
}

// --- de-randomization ------------------------------------------------------

namespace {

// Plain run of m_bar Grover iterates; used when m_tilde is integral.
DerandomizeResult run_plain(const Preparation& prep, Oracle& chi, double theta,
                            DerandomizePlan plan, Rng& rng) {
  const std::uint64_t start = chi.queries();
  StateVector s = prep.initial_state();
  const QOperator q(prep, chi, kPi, kPi);
  for (std::uint64_t i = 0; i < plan.m_bar; ++i) q.apply_in_place(s);

  double bad = 0.0;
  for (std::size_t x = 0; x < s.dim(); ++x)
    if (!chi.peek(x)) bad += s.probability(x);

  DerandomizeResult res;
  res.plan = plan;
  res.outcome = measure(s, rng);
  res.good = chi.evaluate(res.outcome);
  res.final_bad_probability = bad;
  res.queries = chi.queries() - start;
  (void)theta;
  return res;
}

double validated_probability(double a, const char* what) {
  a = clamp_probability(a);
  if (a <= 0.0 || a >= 1.0)
    throw std::invalid_argument(std::string(what) +
                                ": amplification cannot change a in {0, 1}");
  return a;
}

bool integral_m_tilde(double m_tilde) {
  return std::abs(m_tilde - std::round(m_tilde)) <= tolerances().integer_m_tilde;
}

}  // namespace

DerandomizeResult derandomize_rescale(const Preparation& prep, Oracle& chi, double a,
                                      Rng& rng) {
  a = validated_probability(a, "derandomize_rescale");
  const double theta = theta_from_a(a);
  DerandomizePlan plan;
  plan.method = DerandomizeMethod::rescale;
  plan.m_tilde = kPi / (4.0 * theta) - 0.5;

  if (integral_m_tilde(plan.m_tilde)) {
    plan.plain = true;
    plan.m_bar = static_cast<std::uint64_t>(std::llround(plan.m_tilde));
    plan.a_bar = a;
    plan.theta_bar = theta;
    return run_plain(prep, chi, theta, plan, rng);
  }

  plan.m_bar = static_cast<std::uint64_t>(std::ceil(plan.m_tilde));
  plan.theta_bar = kPi / (4.0 * static_cast<double>(plan.m_bar) + 2.0);
  plan.a_bar = std::sin(plan.theta_bar) * std::sin(plan.theta_bar);
  const double ratio = plan.a_bar / a;

  // Composite A (x) B on the doubled space; index 2x + b.
  const StateVector base = prep.initial_state();
  const std::size_t d = base.dim();
  if (2 * d > kMaxStateDim)
    throw std::invalid_argument("derandomize_rescale: doubled space exceeds engine cap");
  std::vector<cdouble> amps(2 * d);
  const double b0 = std::sqrt(1.0 - ratio);
  const double b1 = std::sqrt(ratio);
  for (std::size_t x = 0; x < d; ++x) {
    amps[2 * x] = base.amp(x) * b0;
    amps[2 * x + 1] = base.amp(x) * b1;
  }
  const Preparation composite_prep = Preparation::from_state(StateVector(2 * d, amps));
  Oracle chi_base = chi;  // shares the counter
  Oracle composite = chi.derived_view(2 * d, [chi_base](std::uint64_t y) {
    return (y & 1) && chi_base.peek(y >> 1);
  });

  const std::uint64_t start = chi.queries();
  StateVector s = composite_prep.initial_state();
  const QOperator q(composite_prep, composite, kPi, kPi);
  for (std::uint64_t i = 0; i < plan.m_bar; ++i) q.apply_in_place(s);

  double bad = 0.0;
  for (std::size_t y = 0; y < s.dim(); ++y)
    if (!composite.peek(y)) bad += s.probability(y);

  DerandomizeResult res;
  res.plan = plan;
  res.outcome = measure(s, rng) >> 1;
  res.good = chi.evaluate(res.outcome);
  res.final_bad_probability = bad;
  res.queries = chi.queries() - start;
  return res;
}

std::pair<double, double> solve_final_phases(double theta_a, std::uint64_t floor_m_tilde) {
  const double two_theta = 2.0 * theta_a;
  const double target = (2.0 * static_cast<double>(floor_m_tilde) + 1.0) * theta_a;
  const double t = std::cos(target) / std::sin(target);  // cot, positive here
  if (!(t > 0.0))
    throw std::runtime_error("solve_final_phases: angle outside the solvable range");

  const auto h = [&](double phi) {
    const double c = std::cos(phi / 2.0) / std::sin(phi / 2.0);
    return t * std::hypot(std::cos(two_theta), c) - std::sin(two_theta);
  };

  double lo = 1e-9;
  double hi = kPi;
  if (h(lo) <= 0.0 || h(hi) >= 0.0)
    throw std::runtime_error("solve_final_phases: root bracket failed");
  while (hi - lo > tolerances().phase_solver) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double phi = 0.5 * (lo + hi);
  const double c = std::cos(phi / 2.0) / std::sin(phi / 2.0);
  double phi_prime = std::atan2(c, -std::cos(two_theta));
  if (phi_prime < 0.0) phi_prime += 2.0 * kPi;

  // Residual of the final-iteration equation; reported on failure.
  const double a = std::sin(theta_a) * std::sin(theta_a);
  const cdouble ephi = std::polar(1.0, phi);
  const cdouble lhs = std::polar(1.0, phi_prime) * (1.0 - ephi) * std::sqrt(a) *
                      std::sin(target);
  const cdouble rhs =
      ((1.0 - ephi) * a + ephi) * std::cos(target) / std::sqrt(1.0 - a);
  const double residual = std::abs(lhs - rhs);
  if (residual > 1e-7)
    throw std::runtime_error("solve_final_phases: did not converge, residual " +
                             std::to_string(residual));
  return {phi, phi_prime};
}

DerandomizeResult derandomize_phase(const Preparation& prep, Oracle& chi, double a,
                                    Rng& rng) {
  a = validated_probability(a, "derandomize_phase");
  const double theta = theta_from_a(a);
  DerandomizePlan plan;
  plan.method = DerandomizeMethod::phase;
  plan.m_tilde = kPi / (4.0 * theta) - 0.5;

  if (integral_m_tilde(plan.m_tilde)) {
    plan.plain = true;
    plan.m_bar = static_cast<std::uint64_t>(std::llround(plan.m_tilde));
    return run_plain(prep, chi, theta, plan, rng);
  }

  const auto k = static_cast<std::uint64_t>(std::floor(plan.m_tilde));
  plan.m_bar = k + 1;
  const auto [phi, phi_prime] = solve_final_phases(theta, k);
  plan.phi = phi;
  plan.phi_prime = phi_prime;

  const std::uint64_t start = chi.queries();
  StateVector s = prep.initial_state();
  const QOperator q_pi(prep, chi, kPi, kPi);
  for (std::uint64_t i = 0; i < k; ++i) q_pi.apply_in_place(s);
  const QOperator q_final(prep, chi, phi, phi_prime);
  q_final.apply_in_place(s);

  double bad = 0.0;
  for (std::size_t x = 0; x < s.dim(); ++x)
    if (!chi.peek(x)) bad += s.probability(x);

  DerandomizeResult res;
  res.plan = plan;
  res.outcome = measure(s, rng);
  res.good = chi.evaluate(res.outcome);
  res.final_bad_probability = bad;
  res.queries = chi.queries() - start;
  return res;
}

}  // namespace qamp
