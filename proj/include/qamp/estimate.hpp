#pragma once

#include <cstdint>
#include <vector>

#include "qamp/amplify.hpp"

namespace qamp {

// |S_M(omega)> = (1/sqrt(M)) sum_y e^{2 pi i omega y} |y>.
StateVector phase_state(std::uint64_t m, double omega);

// Shortest-arc distance min_z |z + w1 - w0|, in [0, 1/2].
double arc_distance(double w0, double w1);

// |<S_M(w0)|S_M(w1)>|^2: 1 at coinciding angles, else
// sin^2(M Delta pi) / (M^2 sin^2(Delta pi)).
double overlap_sq(double w0, double w1, std::uint64_t m);

// Distribution of measuring F_M^{-1}|S_M(omega)>: P(x) = overlap_sq(x/M, omega, M).
// A point mass at M*omega when that is an integer.
std::vector<double> qft_measure_pmf(double omega, std::uint64_t m);

// Controlled powers Lambda_M(Q) on |j>|y> (composite index j*D + y): applies
// Q^j to the second register. Materializes the dense matrix; M*D must fit the
// engine cap.
Unitary controlled_powers(const QOperator& q, std::uint64_t m);

struct EstAmpResult {
  std::uint64_t y = 0;
  double a_tilde = 0.0;        // sin^2(pi y / M)
  double theta_tilde = 0.0;    // pi y / M
  std::uint64_t m = 0;
  std::uint64_t queries = 0;   // charged: exactly M
  std::uint64_t gate_applications = 0;  // M(M-1)/2 Q-applications in a literal circuit
};

struct EstAmpOptions {
  Engine engine = Engine::analytic;
  // Exact engine, M a power of two: spread the first register with the
  // Walsh-Hadamard transform instead of F_M.
  bool walsh_step2 = false;
};

// Amplitude estimation. Charges exactly M queries per the estimation theorem;
// the literal circuit's Q-application count is reported separately.
EstAmpResult est_amp(const Preparation& prep, Oracle& chi, std::uint64_t m, Rng& rng,
                     const EstAmpOptions& options = {});

// Exact-engine marginal over the measured register (full circuit, no sampling).
std::vector<double> est_amp_exact_pmf(const Preparation& prep, const Oracle& chi,
                                      std::uint64_t m, bool walsh_step2 = false);

// The estimation theorem's equal mixture of the two eigenphase distributions.
std::vector<double> est_amp_mixture_pmf(double a, std::uint64_t m);

// Bound 2 eps sqrt(a(1-a)) + eps^2 on |sin^2(theta_a +- eps) - a|.
double phase_error_to_amp_error(double a, double eps);

}  // namespace qamp
