#include "qamp/unitary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qamp/tolerances.hpp"

namespace qamp {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("Unitary: dimension must be positive");
  if (dim > kMaxStateDim)
    throw std::invalid_argument("Unitary: dimension " + std::to_string(dim) +
                                " exceeds the dense engine cap");
}

void maybe_verify(const Unitary& u) {
  if (!unitary_construction_checks()) return;
  const double defect = u.unitarity_defect();
  if (defect > tolerances().unitary)
    throw std::logic_error("Unitary: U†U deviates from identity by " +
                           std::to_string(defect));
}

}  // namespace

Unitary::Unitary(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  check_dim(dim);
  for (std::size_t i = 0; i < dim; ++i) entries_[i * dim + i] = 1.0;
}

Unitary::Unitary(std::size_t dim, std::vector<cdouble> entries)
    : dim_(dim), entries_(std::move(entries)) {
  check_dim(dim);
  if (entries_.size() != dim * dim)
    throw std::invalid_argument("Unitary: entry count does not match dimension");
  maybe_verify(*this);
}

Unitary Unitary::dagger() const {
  std::vector<cdouble> out(dim_ * dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
  return Unitary(dim_, std::move(out));
}

double Unitary::unitarity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      cdouble acc = 0.0;
      for (std::size_t k = 0; k < dim_; ++k)
        acc += std::conj(entries_[k * dim_ + r]) * entries_[k * dim_ + c];
      if (r == c) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

StateVector apply(const Unitary& u, const StateVector& s) {
  if (u.dim() != s.dim())
    throw std::invalid_argument("apply: operator and state dimensions differ");
  const std::size_t d = u.dim();
  std::vector<cdouble> out(d);
  for (std::size_t r = 0; r < d; ++r) {
    cdouble acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) acc += u(r, c) * s.amp(c);
    out[r] = acc;
  }
  return StateVector(d, std::move(out));
}

Unitary multiply(const Unitary& a, const Unitary& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("multiply: operator dimensions differ");
  const std::size_t d = a.dim();
  std::vector<cdouble> out(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k < d; ++k) {
      const cdouble ark = a(r, k);
      if (ark == cdouble{}) continue;
      for (std::size_t c = 0; c < d; ++c) out[r * d + c] += ark * b(k, c);
    }
  }
  return Unitary(d, std::move(out));
}

Unitary tensor(const Unitary& a, const Unitary& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  check_dim(da * db);
  std::vector<cdouble> out(da * db * da * db);
  for (std::size_t ra = 0; ra < da; ++ra)
    for (std::size_t ca = 0; ca < da; ++ca) {
      const cdouble v = a(ra, ca);
      if (v == cdouble{}) continue;
      for (std::size_t rb = 0; rb < db; ++rb)
        for (std::size_t cb = 0; cb < db; ++cb)
          out[(ra * db + rb) * da * db + (ca * db + cb)] = v * b(rb, cb);
    }
  return Unitary(da * db, std::move(out));
}

Unitary fourier(std::size_t m) {
  if (m == 0) throw std::invalid_argument("fourier: modulus must be positive");
  check_dim(m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<cdouble> out(m * m);
  for (std::size_t y = 0; y < m; ++y)
    for (std::size_t x = 0; x < m; ++x) {
      const std::size_t phase = (x * y) % m;  // keeps the angle small and exact
      out[y * m + x] = std::polar(scale, 2.0 * std::numbers::pi *
                                             static_cast<double>(phase) /
                                             static_cast<double>(m));
    }
  return Unitary(m, std::move(out));
}

Unitary walsh_hadamard(unsigned n_qubits) {
  if (n_qubits == 0)
    throw std::invalid_argument("walsh_hadamard: qubit count must be positive");
  const std::size_t n = std::size_t{1} << n_qubits;
  check_dim(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<cdouble> out(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const bool odd = std::popcount(x & y) & 1u;
      out[x * n + y] = odd ? -scale : scale;
    }
  return Unitary(n, std::move(out));
}

}  // namespace qamp
