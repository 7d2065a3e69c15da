#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "qamp/oracle.hpp"

using namespace qamp;

namespace {
constexpr double PI = std::numbers::pi;
}

TEST_CASE("evaluate: values, range check, counter contract") {
  Oracle zero = make_constant(8, false);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(zero.evaluate(x) == false);

  Oracle single = make_singleton(8, 3);
  CHECK(single.evaluate(3));
  CHECK_FALSE(single.evaluate(4));
  CHECK_THROWS_AS(single.evaluate(8), std::out_of_range);

  Oracle o = make_planted(32, 5, 1);
  for (int i = 0; i < 7; ++i) o.evaluate(static_cast<std::uint64_t>(i));
  CHECK(o.queries() == 7);

  // the predicate is pure
  Oracle p = make_planted(64, 17, 9);
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(p.peek(x) == p.peek(x));
}

TEST_CASE("negate: involution, counts, shared counter") {
  Oracle zero = make_constant(4, false);
  Oracle one = zero.negate();
  for (std::uint64_t x = 0; x < 4; ++x) CHECK(one.peek(x));

  Oracle o = make_planted(16, 6, 4);
  Oracle nn = o.negate().negate();
  for (std::uint64_t x = 0; x < 16; ++x) CHECK(nn.peek(x) == o.peek(x));

  // t(not f) = N - t(f), both brute-forced
  Oracle a = make_planted(16, 6, 4);
  Oracle b = a.negate();
  const GoodSetSummary st = brute_count(a);
  const GoodSetSummary sn = brute_count(b);
  CHECK(st.t == 6);
  CHECK(sn.t == 10);
  // both brute counts hit the one shared counter
  CHECK(a.queries() == 32);
  CHECK(b.queries() == 32);
}

TEST_CASE("brute_count: trivial and planted instances") {
  Oracle one = make_constant(8, true);
  CHECK(brute_count(one).t == 8);
  CHECK(one.queries() == 8);

  Oracle single = make_singleton(1024, 77);
  CHECK(brute_count(single).t == 1);

  Oracle planted = make_planted(64, 23, 5);
  CHECK(brute_count(planted).t == 23);
  CHECK(planted.good_set().size() == 23);
}

TEST_CASE("generators: planted determinism and clustered layout") {
  Oracle a = make_planted(256, 40, 11);
  Oracle b = make_planted(256, 40, 11);
  CHECK(a.good_set() == b.good_set());
  Oracle c = make_planted(256, 40, 12);
  CHECK(a.good_set() != c.good_set());

  Oracle cl = make_clustered(64, 10, 0);
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(cl.peek(x) == (x >= 54));
}

TEST_CASE("build_s_chi: phases and involution at pi") {
  Oracle g1 = make_singleton(2, 1);
  const Unitary flip = build_s_chi(g1, PI);
  CHECK(std::abs(flip(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(flip(1, 1) + 1.0) < 1e-15);

  const Unitary id = build_s_chi(g1, 0.0);
  CHECK(std::abs(id(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(id(1, 1) - 1.0) < 1e-15);

  Oracle g0 = make_singleton(2, 0);
  const Unitary quarter = build_s_chi(g0, PI / 2);
  CHECK(std::abs(quarter(0, 0) - cdouble(0, 1)) < 1e-15);
  CHECK(std::abs(quarter(1, 1) - 1.0) < 1e-15);

  Oracle o = make_planted(16, 5, 3);
  const Unitary s = build_s_chi(o, PI);
  const Unitary ss = multiply(s, s);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c)
      CHECK(std::abs(ss(r, c) - (r == c ? 1.0 : 0.0)) < 1e-12);

  CHECK_THROWS_AS(build_s_chi(o, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(build_s_chi(o, 2 * PI), std::invalid_argument);
}

TEST_CASE("charge and clone accounting") {
  Oracle o = make_planted(32, 4, 2);
  o.charge(10);
  CHECK(o.queries() == 10);
  Oracle fresh = o.clone_with_fresh_counter();
  CHECK(fresh.queries() == 0);
  fresh.evaluate(0);
  CHECK(fresh.queries() == 1);
  CHECK(o.queries() == 10);
}

TEST_CASE("good/bad sampling covers the right sets") {
  Oracle o = make_planted(64, 9, 21);
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    CHECK(o.peek(o.sample_good(rng)));
    CHECK_FALSE(o.peek(o.sample_bad(rng)));
  }
}

TEST_CASE("truth table files: round trip and validation") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qamp_oracle_test";
  fs::create_directories(dir);

  Oracle o = make_planted(40, 13, 6);
  const std::string path = (dir / "f.tt").string();
  save_truth_table(o, path);
  Oracle back = load_truth_table(path);
  REQUIRE(back.domain_size() == 40);
  for (std::uint64_t x = 0; x < 40; ++x) CHECK(back.peek(x) == o.peek(x));

  const std::string bad1 = (dir / "bad1.tt").string();
  std::ofstream(bad1) << "5\n0101\n";
  CHECK_THROWS_AS(load_truth_table(bad1), std::runtime_error);

  const std::string bad2 = (dir / "bad2.tt").string();
  std::ofstream(bad2) << "4\n01a1\n";
  CHECK_THROWS_AS(load_truth_table(bad2), std::runtime_error);

  CHECK_THROWS_AS(load_truth_table((dir / "missing.tt").string()), std::runtime_error);
  fs::remove_all(dir);
}
