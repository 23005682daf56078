#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mres/linkpoly.hpp"

using namespace mres;

namespace {

LinkPolynomial P(const std::string& s, int n) { return parse_polynomial(s, n); }

LinkPolynomial random_family(std::mt19937_64& rng, int n) {
  std::vector<RingMask> all;
  for (RingMask m = 0; m <= full_mask(n); ++m)
    if (popcount(m) >= 2) all.push_back(m);
  std::vector<RingMask> pick;
  std::bernoulli_distribution coin(0.35);
  for (RingMask m : all)
    if (coin(rng)) pick.push_back(m);
  return LinkPolynomial(n, pick);
}

}  // namespace

TEST_CASE("rule 1 and set semantics") {
  CHECK(P("aab", 2).to_string() == "ab");
  CHECK(P("ab+ba", 2).monomials().size() == 1);
  CHECK(P("ab+ba", 2).to_string() == "ab");
  CHECK(P("", 3).to_string() == "0");
  CHECK_THROWS(P("ad", 3));
}

TEST_CASE("rule 5 drops monomials linked through their sub-monomials") {
  CHECK(canonicalize(P("abc+ac+ab", 3)).to_string() == "ab+ac");
  CHECK(canonicalize(P("abc+ab", 3)).to_string() == "ab+abc");
  CHECK(is_redundant(0b111, std::vector<RingMask>{0b011, 0b101, 0b111}));
  CHECK_FALSE(is_redundant(0b111, std::vector<RingMask>{0b011, 0b111}));
}

TEST_CASE("cut examples") {
  const auto p = P("ab+bc", 3);
  CHECK(cut(p, 0b001).to_string() == "bc");
  CHECK(cut(p, 0b010).empty());
  CHECK(std::holds_alternative<FullyDisconnected>(connectivity(cut(p, 0b010), 0b101)));
  CHECK(cut(P("abc", 3), 0) == P("abc", 3));
}

TEST_CASE("connectivity examples") {
  CHECK(std::holds_alternative<FullyConnected>(connectivity(P("ab+bc", 3), 0b111)));
  const auto s = connectivity(P("ab+cd", 4), 0b1111);
  REQUIRE(std::holds_alternative<PartiallyConnected>(s));
  CHECK(std::get<PartiallyConnected>(s).components == std::vector<RingMask>{0b0011, 0b1100});
  CHECK(std::holds_alternative<FullyDisconnected>(connectivity(LinkPolynomial(4, {}), 0b1111)));
}

TEST_CASE("generate_m_resistant examples") {
  CHECK(generate_m_resistant(3, 0).to_string() == "abc");
  CHECK(generate_m_resistant(3, 1).to_string() == "ab+ac+bc");
  CHECK(generate_m_resistant(4, 2).to_string() == "ab+ac+ad+bc+bd+cd");
}

TEST_CASE("is_m_resistant_link examples") {
  CHECK(is_m_resistant_link(P("abc", 3)) == 0);
  CHECK(is_m_resistant_link(P("ab+ac+bc", 3)) == 1);
  CHECK_FALSE(is_m_resistant_link(P("ab+bc", 3)).has_value());
}

TEST_CASE("generated links have the resistance they were built for") {
  for (int n = 2; n <= 7; ++n)
    for (int m = 0; m <= n - 2; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(is_m_resistant_link(generate_m_resistant(n, m)) == m);
    }
}

TEST_CASE("canonicalization is confluent") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 3;
    const auto p = random_family(rng, n);
    const auto ref = canonicalize(p);
    std::vector<std::size_t> order(p.monomials().size());
    std::iota(order.begin(), order.end(), 0);
    for (int k = 0; k < 4; ++k) {
      std::shuffle(order.begin(), order.end(), rng);
      CHECK(canonicalize_in_order(p, order) == ref);
    }
  }
}

TEST_CASE("cut composes over disjoint ring sets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 3;
    const auto p = canonicalize(random_family(rng, n));
    const RingMask a = static_cast<RingMask>(rng()) & full_mask(n);
    const RingMask b = static_cast<RingMask>(rng()) & full_mask(n) & ~a;
    CHECK(cut(cut(p, a), b) == cut(p, a | b));
  }
}

TEST_CASE("canonical_form is invariant under relabeling") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4;
    const auto p = canonicalize(random_family(rng, n));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<RingMask> moved;
    for (RingMask m : p.monomials()) {
      RingMask r = 0;
      for (int i = 0; i < n; ++i)
        if (m >> i & 1) r |= RingMask{1} << perm[i];
      moved.push_back(r);
    }
    CHECK(canonical_form(LinkPolynomial(n, moved)) == canonical_form(p));
  }
}

TEST_CASE("census for small ring counts") {
  CHECK(enumerate_classes(2).class_count == 1);
  const auto c3 = enumerate_classes(3);
  CHECK(c3.class_count == 4);
  std::vector<std::string> names;
  for (const auto& r : c3.representatives) names.push_back(canonical_form(r).to_string());
  std::sort(names.begin(), names.end());
  std::vector<std::string> expected;
  for (const char* s : {"abc", "ab+bc", "ab+ac+bc", "ab+abc"})
    expected.push_back(canonical_form(P(s, 3)).to_string());
  std::sort(expected.begin(), expected.end());
  CHECK(names == expected);
  const auto c4 = enumerate_classes(4, 2);
  CHECK(c4.class_count == 40);
  for (const auto& r : c4.representatives) {
    CHECK(canonical_form(r) == r);
    CHECK(r.canonical());
    CHECK(std::holds_alternative<FullyConnected>(connectivity(r, full_mask(4))));
  }
}

TEST_CASE("census is independent of the thread count") {
  const auto a = enumerate_classes(4, 1);
  const auto b = enumerate_classes(4, 3);
  CHECK(a.representatives == b.representatives);
}
