#include "qamp/state.hpp"

#include <cmath>
#include <stdexcept>

#include "qamp/tolerances.hpp"

namespace qamp {

StateVector::StateVector(std::size_t dim) : amps_(dim) {
  if (dim == 0) throw std::invalid_argument("StateVector: dimension must be positive");
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t dim, std::vector<cdouble> amps)
    : amps_(std::move(amps)) {
  if (dim == 0) throw std::invalid_argument("StateVector: dimension must be positive");
  if (amps_.size() != dim)
    throw std::invalid_argument("StateVector: amplitude count does not match dimension");
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("StateVector::basis: index out of range");
  std::vector<cdouble> amps(dim);
  amps[index] = 1.0;
  return StateVector(dim, std::move(amps));
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cdouble& a : amps_) s += std::norm(a);
  return s;
}

std::size_t measure(const StateVector& s, Rng& rng) {
  const double norm = s.norm_sq();
  if (std::abs(norm - 1.0) > tolerances().measure_norm)
    throw std::logic_error("measure: state is not normalized");
  const double u = rng.next_double();
  double acc = 0.0;
  std::size_t last_support = 0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double p = s.probability(i);
    if (p > 0.0) last_support = i;
    acc += p;
    if (u < acc) return i;
  }
  return last_support;
}

}  // namespace qamp
