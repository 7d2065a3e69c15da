#include "qamp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "qamp/tolerances.hpp"

namespace qamp {

namespace {

// Enumerating a good set beyond this is almost certainly a mistake; planted
// generators attach theirs and never hit the guard.
constexpr std::uint64_t kGoodSetEnumerationCap = std::uint64_t{1} << 26;

// k-th element (0-based) of {0..n-1} \ goods, with goods sorted ascending.
std::uint64_t kth_excluded(const std::vector<std::uint64_t>& goods, std::uint64_t n,
                           std::uint64_t k) {
  std::uint64_t lo = 0;
  std::uint64_t hi = n - 1;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    const auto goods_leq =
        static_cast<std::uint64_t>(std::upper_bound(goods.begin(), goods.end(), mid) -
                                   goods.begin());
    const std::uint64_t excluded_leq = (mid + 1) - goods_leq;
    if (excluded_leq < k + 1)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

Oracle::Oracle(std::uint64_t domain_size, std::function<bool(std::uint64_t)> predicate)
    : n_(domain_size), fn_(std::move(predicate)),
      counter_(std::make_shared<std::uint64_t>(0)) {
  if (n_ == 0) throw std::invalid_argument("Oracle: domain must be non-empty");
  if (!fn_) throw std::invalid_argument("Oracle: predicate must be callable");
}

bool Oracle::evaluate(std::uint64_t x) {
  if (x >= n_) throw std::out_of_range("Oracle::evaluate: point outside the domain");
  ++*counter_;
  return fn_(x);
}

bool Oracle::peek(std::uint64_t x) const {
  if (x >= n_) throw std::out_of_range("Oracle::peek: point outside the domain");
  return fn_(x);
}

Oracle Oracle::negate() const {
  auto base = fn_;
  Oracle out(n_, [base](std::uint64_t x) { return !base(x); });
  out.counter_ = counter_;
  if (good_count_) out.good_count_ = n_ - *good_count_;
  return out;
}

Oracle Oracle::derived_view(std::uint64_t domain_size,
                            std::function<bool(std::uint64_t)> predicate) const {
  Oracle out(domain_size, std::move(predicate));
  out.counter_ = counter_;
  return out;
}

Oracle Oracle::clone_with_fresh_counter() const {
  Oracle out = *this;
  out.counter_ = std::make_shared<std::uint64_t>(0);
  return out;
}

void Oracle::materialize_good_set() const {
  if (good_) return;
  if (n_ > kGoodSetEnumerationCap)
    throw std::logic_error("Oracle: good-set enumeration beyond the guard; attach a planted set");
  auto set = std::make_shared<std::vector<std::uint64_t>>();
  for (std::uint64_t x = 0; x < n_; ++x)
    if (fn_(x)) set->push_back(x);
  good_ = set;
  good_count_ = set->size();
}

std::uint64_t Oracle::good_count() const {
  if (good_count_) return *good_count_;
  materialize_good_set();
  return *good_count_;
}

bool Oracle::has_known_good_count() const { return good_count_.has_value(); }

const std::vector<std::uint64_t>& Oracle::good_set() const {
  materialize_good_set();
  return *good_;
}

std::uint64_t Oracle::sample_good(Rng& rng) const {
  const auto& goods = good_set();
  if (goods.empty()) throw std::logic_error("Oracle::sample_good: good set is empty");
  return goods[rng.next_below(goods.size())];
}

std::uint64_t Oracle::sample_bad(Rng& rng) const {
  const auto& goods = good_set();
  const std::uint64_t bad = n_ - goods.size();
  if (bad == 0) throw std::logic_error("Oracle::sample_bad: bad set is empty");
  return kth_excluded(goods, n_, rng.next_below(bad));
}

void Oracle::attach_good_set(std::vector<std::uint64_t> sorted_good) {
  auto set = std::make_shared<std::vector<std::uint64_t>>(std::move(sorted_good));
  good_count_ = set->size();
  good_ = std::move(set);
}

GoodSetSummary brute_count(Oracle& o) {
  GoodSetSummary s;
  s.n = o.domain_size();
  for (std::uint64_t x = 0; x < s.n; ++x)
    if (o.evaluate(x)) ++s.t;
  return s;
}

Unitary build_s_chi(const Oracle& o, double phi_prime) {
  if (phi_prime < 0.0 || phi_prime >= 2.0 * std::numbers::pi)
    throw std::invalid_argument("build_s_chi: phase must lie in [0, 2pi)");
  const std::uint64_t n = o.domain_size();
  if (n > kMaxStateDim)
    throw std::invalid_argument("build_s_chi: domain exceeds the dense engine cap");
  const cdouble mark = std::polar(1.0, phi_prime);
  std::vector<cdouble> entries(n * n);
  for (std::uint64_t x = 0; x < n; ++x) entries[x * n + x] = o.peek(x) ? mark : 1.0;
  return Unitary(n, std::move(entries));
}

Oracle make_constant(std::uint64_t n, bool value) {
  Oracle o(n, [value](std::uint64_t) { return value; });
  if (value) {
    std::vector<std::uint64_t> all(n);
    for (std::uint64_t x = 0; x < n; ++x) all[x] = x;
    o.attach_good_set(std::move(all));
  } else {
    o.attach_good_set({});
  }
  return o;
}

Oracle make_singleton(std::uint64_t n, std::uint64_t x0) {
  if (x0 >= n) throw std::invalid_argument("make_singleton: marked point outside domain");
  Oracle o(n, [x0](std::uint64_t x) { return x == x0; });
  o.attach_good_set({x0});
  return o;
}

Oracle make_planted(std::uint64_t n, std::uint64_t t, std::uint64_t seed) {
  if (t > n) throw std::invalid_argument("make_planted: t exceeds domain size");
  // Floyd's sampling: t distinct points, deterministic in the seed.
  Rng rng(Rng::mix(seed, 0x706c616e74ULL));
  std::vector<std::uint64_t> picked;
  picked.reserve(t);
  for (std::uint64_t i = n - t; i < n; ++i) {
    std::uint64_t v = rng.next_below(i + 1);
    if (std::find(picked.begin(), picked.end(), v) != picked.end()) v = i;
    picked.push_back(v);
  }
  std::sort(picked.begin(), picked.end());
  auto set = std::make_shared<std::vector<std::uint64_t>>(picked);
  Oracle o(n, [set](std::uint64_t x) {
    return std::binary_search(set->begin(), set->end(), x);
  });
  o.attach_good_set(std::move(picked));
  return o;
}

Oracle make_clustered(std::uint64_t n, std::uint64_t t, std::uint64_t seed) {
  if (t > n) throw std::invalid_argument("make_clustered: t exceeds domain size");
  (void)seed;  // accepted for interface uniformity; the layout is fixed
  const std::uint64_t first = n - t;
  Oracle o(n, [first](std::uint64_t x) { return x >= first; });
  std::vector<std::uint64_t> goods(t);
  for (std::uint64_t i = 0; i < t; ++i) goods[i] = first + i;
  o.attach_good_set(std::move(goods));
  return o;
}

Oracle load_truth_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("truth table: cannot open " + path);
  std::uint64_t n = 0;
  if (!(in >> n) || n == 0)
    throw std::runtime_error("truth table: first line must be a positive domain size");
  std::string bits;
  if (!(in >> bits)) throw std::runtime_error("truth table: missing bit string");
  if (bits.size() != n)
    throw std::runtime_error("truth table: expected " + std::to_string(n) +
                             " characters, got " + std::to_string(bits.size()));
  auto table = std::make_shared<std::vector<bool>>(n);
  std::vector<std::uint64_t> goods;
  for (std::uint64_t i = 0; i < n; ++i) {
    const char c = bits[i];
    if (c != '0' && c != '1')
      throw std::runtime_error("truth table: invalid character at position " +
                               std::to_string(i));
    (*table)[i] = (c == '1');
    if (c == '1') goods.push_back(i);
  }
  Oracle o(n, [table](std::uint64_t x) { return (*table)[x]; });
  o.attach_good_set(std::move(goods));
  return o;
}

void save_truth_table(const Oracle& o, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("truth table: cannot write " + path);
  out << o.domain_size() << '\n';
  for (std::uint64_t x = 0; x < o.domain_size(); ++x) out << (o.peek(x) ? '1' : '0');
  out << '\n';
}

}  // namespace qamp
