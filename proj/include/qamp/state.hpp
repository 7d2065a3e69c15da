#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qamp/rng.hpp"

namespace qamp {

using cdouble = std::complex<double>;

// Dense statevector engine cap. The closed-form engine handles larger domains.
inline constexpr std::size_t kMaxStateDim = std::size_t{1} << 14;

// Finite sequence of complex amplitudes over the basis {0..dim-1}. The
// dimension is fixed at construction. Decomposition routines also store
// unnormalized projections in this type, so the norm is not enforced here;
// measure() rejects states that drifted from norm 1.
class StateVector {
 public:
  explicit StateVector(std::size_t dim);  // |0>
  StateVector(std::size_t dim, std::vector<cdouble> amps);

  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  const std::vector<cdouble>& amps() const { return amps_; }
  cdouble amp(std::size_t i) const { return amps_[i]; }
  void set_amp(std::size_t i, cdouble v) { amps_[i] = v; }

  double norm_sq() const;
  double probability(std::size_t i) const { return std::norm(amps_[i]); }

 private:
  std::vector<cdouble> amps_;
};

// Samples a basis index with probability |amps[i]|^2, consuming one rng draw.
std::size_t measure(const StateVector& s, Rng& rng);

}  // namespace qamp
