#pragma once

#include <cstddef>
#include <vector>

#include "qamp/state.hpp"

namespace qamp {

// Dense D x D complex matrix, row-major. Construction optionally verifies
// U†U = I (see set_unitary_construction_checks).
class Unitary {
 public:
  explicit Unitary(std::size_t dim);  // identity
  Unitary(std::size_t dim, std::vector<cdouble> entries);

  std::size_t dim() const { return dim_; }
  cdouble operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  cdouble& at(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const std::vector<cdouble>& entries() const { return entries_; }

  Unitary dagger() const;

  // max |(U†U - I)_ij|
  double unitarity_defect() const;

 private:
  std::size_t dim_;
  std::vector<cdouble> entries_;
};

StateVector apply(const Unitary& u, const StateVector& s);
Unitary multiply(const Unitary& a, const Unitary& b);
Unitary tensor(const Unitary& a, const Unitary& b);

// Discrete Fourier transform of modulus M: entry (y, x) = e^{2 pi i x y / M} / sqrt(M).
// Works for any M >= 1, not only powers of two.
Unitary fourier(std::size_t m);

// Walsh-Hadamard transform on n qubits: entry (x, y) = (-1)^{popcount(x & y)} / sqrt(2^n).
Unitary walsh_hadamard(unsigned n_qubits);

}  // namespace qamp
