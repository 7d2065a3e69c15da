#pragma once

namespace qamp {

// Numerical tolerances used throughout the library. Every closed-form
// comparison reads from this record so the constants live in one place.
struct Tolerances {
  double unitary = 1e-9;             // max |(U†U - I)_ij| on construction checks
  double norm = 1e-10;               // statevector norm drift after an operation
  double orthogonality = 1e-10;      // |<good|bad>| in amplitude decompositions
  double certainty = 1e-8;           // residual bad probability in de-randomized runs
  double integer_m_tilde = 1e-9;     // integrality test for pi/(4 theta_a) - 1/2
  double endpoint_clamp = 1e-12;     // a this close to 0 or 1 is clamped to the endpoint
  double phase_solver = 1e-12;       // bisection width for the tuned final iteration
  double omega_singularity = 1e-12;  // arc distance treated as zero in overlap formulas
  double measure_norm = 1e-6;        // measuring a state further from norm 1 is a fault
};

// Mutable process-wide defaults.
Tolerances& tolerances();

// Enables U†U = I verification inside the Unitary constructor (test mode).
void set_unitary_construction_checks(bool enabled);
bool unitary_construction_checks();

}  // namespace qamp
