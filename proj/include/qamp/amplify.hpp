#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "qamp/oracle.hpp"
#include "qamp/state.hpp"
#include "qamp/unitary.hpp"

namespace qamp {

// Which simulation route an algorithm runs on.
//  exact    - dense statevector, limited to kMaxStateDim
//  analytic - closed-form sampling from the proven distributions; scales to
//             any domain size for uniform preparations
enum class Engine { exact, analytic };

// A measurement-free state preparation A. Three flavours:
//  - an explicit unitary (column 0 is A|0>),
//  - the implicit uniform superposition (W when N is a power of two, F_N
//    otherwise), usable at any domain size by the analytic engine,
//  - a bare initial state |Psi> = A|0>, which is all the iterate Q ever
//    needs of A.
class Preparation {
 public:
  static Preparation unitary(Unitary a);
  static Preparation uniform(std::uint64_t n);
  static Preparation from_state(StateVector psi);

  std::uint64_t dim() const { return dim_; }
  bool is_uniform() const { return uniform_; }
  bool has_matrix() const { return matrix_.has_value(); }
  const Unitary& matrix() const;

  // A|0>. Materializes the vector; requires dim <= kMaxStateDim.
  StateVector initial_state() const;
  cdouble amplitude(std::uint64_t x) const;  // <x|A|0>

 private:
  Preparation() = default;
  std::uint64_t dim_ = 0;
  bool uniform_ = false;
  std::optional<Unitary> matrix_;
  std::optional<StateVector> psi_;
};

// Probability a and angle theta_a with sin^2(theta_a) = a, together with the
// unnormalized projections of A|0> onto the good and bad subspaces. The
// projections are materialized only when the dimension fits the dense engine.
struct AmplitudeSpec {
  double a = 0.0;
  double theta_a = 0.0;
  std::optional<StateVector> good_proj;
  std::optional<StateVector> bad_proj;

  bool has_projections() const { return good_proj.has_value(); }
};

AmplitudeSpec decompose(const Preparation& prep, const Oracle& chi);

// The generalized iterate Q(A, chi, phi, phi') = -A S_0(phi) A^{-1} S_chi(phi').
// Applications go through the identity A S_0(phi) A^{-1} = I + (e^{i phi}-1)|Psi><Psi|,
// so one application is O(D). One application charges one query to chi unless
// suppressed (Est_Amp charges its total separately).
class QOperator {
 public:
  QOperator(const Preparation& prep, const Oracle& chi, double phi, double phi_prime);

  double phi() const { return phi_; }
  double phi_prime() const { return phi_prime_; }
  std::uint64_t dim() const { return psi_.dim(); }

  void apply_in_place(StateVector& s, bool charge_query = true) const;
  StateVector apply(const StateVector& s, bool charge_query = true) const;

  // Dense matrix of Q, built lazily and cached.
  const Unitary& matrix() const;

 private:
  StateVector psi_;
  std::vector<bool> good_;
  mutable Oracle chi_;
  double phi_;
  double phi_prime_;
  mutable std::optional<Unitary> matrix_;
};

QOperator build_q(const Preparation& prep, const Oracle& chi, double phi, double phi_prime);

// Literal product -A S_0(phi) A^{-1} S_chi(phi'); test reference for QOperator.
Unitary q_matrix_from_product(const Unitary& a, const Oracle& chi, double phi,
                              double phi_prime);

// Action of Q(A, chi, phi, phi') on the coordinates (alpha, beta) of
// alpha|Psi_1> + beta|Psi_0>; the closed-form engine's two-dimensional step.
std::pair<cdouble, cdouble> q_coefficient_action(cdouble alpha, cdouble beta, double a,
                                                 double phi, double phi_prime);

// Coefficients of Q^j A|0> in the (|Psi_1>, |Psi_0>) decomposition:
// (1/sqrt(a)) sin((2j+1) theta_a) and (1/sqrt(1-a)) cos((2j+1) theta_a),
// with the degenerate a in {0,1} cases handled by convention. The good
// outcome probability is sin^2((2j+1) theta_a) in all cases.
struct Eq8Coefficients {
  double good = 0.0;
  double bad = 0.0;
  double success_probability = 0.0;
};

Eq8Coefficients amplitude_after(std::uint64_t j, const AmplitudeSpec& spec);

struct AmplifyResult {
  std::uint64_t outcome = 0;
  bool good = false;
  std::uint64_t iterations = 0;  // m
  std::uint64_t queries = 0;     // oracle counter delta: m iterates + final check
};

// Q^m A|0> with m = floor(pi / (4 theta_a)), then measure. Requires a > 0.
AmplifyResult amplify_known_a(const Preparation& prep, Oracle& chi, double a, Rng& rng,
                              Engine engine = Engine::exact);

struct QSearchConfig {
  double growth = 1.5;  // the constant c, 1 < c < 2
  std::optional<std::uint64_t> max_total_queries;
  Engine engine = Engine::exact;
};

struct QSearchResult {
  std::optional<std::uint64_t> found;  // empty: query budget exhausted
  std::uint64_t queries = 0;
  std::uint64_t rounds = 0;
  std::uint64_t final_m = 0;  // last schedule value M = ceil(c^l)
};

// Search with unknown success probability. Expected charged queries are
// Theta(1/sqrt(a)) for a > 0; with a = 0 the loop only ends once the optional
// query cap is exceeded.
QSearchResult qsearch(const Preparation& prep, Oracle& chi, const QSearchConfig& config,
                      Rng& rng);

// --- de-randomization (a known) ----------------------------------------

enum class DerandomizeMethod { rescale, phase };

struct DerandomizePlan {
  double m_tilde = 0.0;       // pi / (4 theta_a) - 1/2
  std::uint64_t m_bar = 0;    // ceil(m_tilde)
  DerandomizeMethod method = DerandomizeMethod::rescale;
  bool plain = false;         // m_tilde integral: no rescale / no tuned phases
  double a_bar = 0.0;         // rescale: sin^2(pi / (4 m_bar + 2))
  double theta_bar = 0.0;
  double phi = 0.0;           // phase: the tuned final iteration angles
  double phi_prime = 0.0;
};

struct DerandomizeResult {
  DerandomizePlan plan;
  std::uint64_t outcome = 0;  // element of the original domain
  bool good = false;
  double final_bad_probability = 0.0;
  std::uint64_t queries = 0;
};

// Method 1: rescale a to a_bar via an auxiliary one-qubit rotation on the
// doubled space, then m_bar plain iterations land exactly on the good axis.
DerandomizeResult derandomize_rescale(const Preparation& prep, Oracle& chi, double a,
                                      Rng& rng);

// Method 2: floor(m_tilde) plain iterations, then one Q(A, chi, phi, phi')
// whose angles zero the bad component.
DerandomizeResult derandomize_phase(const Preparation& prep, Oracle& chi, double a,
                                    Rng& rng);

// Solves the final-iteration angle equation for (phi, phi') given theta_a and
// floor(m_tilde); 1-D bisection in phi with phi' read off as the argument
// correction. Throws if the residual does not converge.
std::pair<double, double> solve_final_phases(double theta_a, std::uint64_t floor_m_tilde);

}  // namespace qamp
