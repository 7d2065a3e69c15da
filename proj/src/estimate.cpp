#include "qamp/estimate.hpp"

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

double wrap_unit(double w) {
  double r = std::fmod(w, 1.0);
  if (r < 0.0) r += 1.0;
  return r;
}

// First-register transform on the composite |j>|y> vector (index j*D + y).
void apply_first_register(const Unitary& t, std::vector<cdouble>& v, std::size_t d) {
  const std::size_t m = t.dim();
  std::vector<cdouble> column(m);
  for (std::size_t y = 0; y < d; ++y) {
    for (std::size_t x = 0; x < m; ++x) column[x] = v[x * d + y];
    for (std::size_t j = 0; j < m; ++j) {
      cdouble acc = 0.0;
      for (std::size_t x = 0; x < m; ++x) acc += t(j, x) * column[x];
      v[j * d + y] = acc;
    }
  }
}

std::vector<double> first_register_marginal(const std::vector<cdouble>& v, std::size_t m,
                                            std::size_t d) {
  std::vector<double> p(m, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t y = 0; y < d; ++y) p[j] += std::norm(v[j * d + y]);
  return p;
}

// Single-draw CDF walk over P(x) = overlap_sq(x/M, omega, M); O(1) memory.
std::uint64_t sample_phase_index(double omega, std::uint64_t m, Rng& rng) {
  const double u = rng.next_double();
  double acc = 0.0;
  for (std::uint64_t x = 0; x < m; ++x) {
    acc += overlap_sq(static_cast<double>(x) / static_cast<double>(m), omega, m);
    if (u < acc) return x;
  }
  return m - 1;
}

}  // namespace

StateVector phase_state(std::uint64_t m, double omega) {
  if (m == 0) throw std::invalid_argument("phase_state: modulus must be positive");
  if (m > kMaxStateDim)
    throw std::invalid_argument("phase_state: modulus exceeds the dense engine cap");
  omega = wrap_unit(omega);
  const auto n = static_cast<std::size_t>(m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<cdouble> amps(n);
  for (std::size_t y = 0; y < n; ++y)
    amps[y] = std::polar(scale, 2.0 * kPi * wrap_unit(omega * static_cast<double>(y)));
  return StateVector(n, std::move(amps));
}

double arc_distance(double w0, double w1) {
  const double d = wrap_unit(w1 - w0);
  return std::min(d, 1.0 - d);
}

double overlap_sq(double w0, double w1, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("overlap_sq: modulus must be positive");
  const double delta = arc_distance(w0, w1);
  if (delta <= tolerances().omega_singularity) return 1.0;
  const double md = static_cast<double>(m);
  const double num = std::sin(md * delta * kPi);
  const double den = md * std::sin(delta * kPi);
  return (num * num) / (den * den);
}

std::vector<double> qft_measure_pmf(double omega, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("qft_measure_pmf: modulus must be positive");
  omega = wrap_unit(omega);
  std::vector<double> p(m);
  for (std::uint64_t x = 0; x < m; ++x)
    p[x] = overlap_sq(static_cast<double>(x) / static_cast<double>(m), omega, m);
  return p;
}

Unitary controlled_powers(const QOperator& q, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("controlled_powers: modulus must be positive");
  const std::size_t d = q.dim();
  if (m > kMaxStateDim / d)
    throw std::invalid_argument("controlled_powers: composite dimension overflow");
  const std::size_t full = static_cast<std::size_t>(m) * d;
  std::vector<cdouble> entries(full * full);
  Unitary power(d);  // Q^0
  for (std::uint64_t j = 0; j < m; ++j) {
    if (j > 0) power = multiply(q.matrix(), power);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        entries[(j * d + r) * full + (j * d + c)] = power(r, c);
  }
  return Unitary(full, std::move(entries));
}

std::vector<double> est_amp_exact_pmf(const Preparation& prep, const Oracle& chi,
                                      std::uint64_t m, bool walsh_step2) {
  if (m == 0) throw std::invalid_argument("est_amp: modulus must be positive");
  const std::size_t d = static_cast<std::size_t>(prep.dim());
  if (m > kMaxStateDim / d)
    throw std::invalid_argument("est_amp: composite dimension overflow");
  const auto mm = static_cast<std::size_t>(m);

  Unitary spread = fourier(mm);
  if (walsh_step2) {
    if (!std::has_single_bit(m))
      throw std::invalid_argument("est_amp: Walsh spreading needs a power-of-two modulus");
    spread = m == 1 ? fourier(1)
                    : walsh_hadamard(static_cast<unsigned>(std::countr_zero(m)));
  }

  std::vector<cdouble> v(mm * d);
  const StateVector psi = prep.initial_state();
  for (std::size_t y = 0; y < d; ++y) v[y] = psi.amp(y);

  apply_first_register(spread, v, d);

  const QOperator q(prep, chi, kPi, kPi);
  for (std::size_t j = 1; j < mm; ++j) {
    StateVector block(d, std::vector<cdouble>(v.begin() + j * d, v.begin() + (j + 1) * d));
    for (std::size_t rep = 0; rep < j; ++rep) q.apply_in_place(block, false);
    std::copy(block.amps().begin(), block.amps().end(), v.begin() + j * d);
  }

  apply_first_register(fourier(mm).dagger(), v, d);
  return first_register_marginal(v, mm, d);
}

std::vector<double> est_amp_mixture_pmf(double a, std::uint64_t m) {
  const double theta = std::asin(std::sqrt(a));
  const double omega = theta / kPi;
  const std::vector<double> p0 = qft_measure_pmf(omega, m);
  const std::vector<double> p1 = qft_measure_pmf(wrap_unit(1.0 - omega), m);
  std::vector<double> p(m);
  for (std::uint64_t x = 0; x < m; ++x) p[x] = 0.5 * (p0[x] + p1[x]);
  return p;
}

EstAmpResult est_amp(const Preparation& prep, Oracle& chi, std::uint64_t m, Rng& rng,
                     const EstAmpOptions& options) {
  if (m == 0) throw std::invalid_argument("est_amp: modulus must be positive");
  EstAmpResult res;
  res.m = m;
  res.gate_applications = m * (m - 1) / 2;

  if (options.engine == Engine::exact) {
    const std::vector<double> p = est_amp_exact_pmf(prep, chi, m, options.walsh_step2);
    const double u = rng.next_double();
    double acc = 0.0;
    std::uint64_t y = m - 1;
    for (std::uint64_t x = 0; x < m; ++x) {
      acc += p[x];
      if (u < acc) {
        y = x;
        break;
      }
    }
    res.y = y;
  } else {
    const AmplitudeSpec spec = decompose(prep, chi);
    const double omega = spec.theta_a / kPi;
    const double branch =
        rng.next_double() < 0.5 ? omega : wrap_unit(1.0 - omega);
    res.y = sample_phase_index(branch, m, rng);
  }

  chi.charge(m);  // the estimation theorem's cost: exactly M evaluations
  res.queries = m;
  res.theta_tilde = kPi * static_cast<double>(res.y) / static_cast<double>(m);
  const double s = std::sin(res.theta_tilde);
  res.a_tilde = s * s;
  return res;
}

double phase_error_to_amp_error(double a, double eps) {
  if (eps < 0.0)
    throw std::invalid_argument("phase_error_to_amp_error: eps must be non-negative");
  return 2.0 * eps * std::sqrt(a * (1.0 - a)) + eps * eps;
}

}  // namespace qamp
