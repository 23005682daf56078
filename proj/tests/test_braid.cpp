#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "mres/braid.hpp"

using namespace mres;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(MRES_GOLDEN_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("Brunnian blocks") {
  CHECK(brunnian_block(2).word == std::vector<int>{1, 1});
  CHECK(brunnian_block(3).word == std::vector<int>{1, -2, 1, -2, 1, -2});
  CHECK(linking_matrix(brunnian_block(2)) == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(linking_matrix(brunnian_block(3)) == std::vector<std::vector<int>>(3, std::vector<int>(3, 0)));
  const auto b3 = brunnian_block(3).word, b4 = brunnian_block(4).word;
  CHECK(std::search(b4.begin(), b4.end(), b3.begin(), b3.end()) != b4.end());
  CHECK(b4.size() == 16);
  CHECK(brunnian_block(5).word.size() == 36);
  for (int n = 2; n <= 5; ++n) {
    CHECK(is_pure(brunnian_block(n)));
    CHECK(validate_brunnian(brunnian_block(n)));
  }
  CHECK_FALSE(validate_brunnian(BraidWord{3, {1, 1, 2, 2}}));
  CHECK_FALSE(validate_brunnian(BraidWord{3, {}}));
  CHECK_THROWS(brunnian_block(6));
}

TEST_CASE("blocks for polynomials") {
  CHECK(compose_blocks(parse_polynomial("abc", 3)) == brunnian_block(3));
  const auto tri = compose_blocks(parse_polynomial("ab+ac+bc", 3));
  CHECK(linking_matrix(tri) == std::vector<std::vector<int>>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto four = compose_blocks(parse_polynomial("abc+abd+acd+bcd", 4));
  CHECK(is_pure(four));
  CHECK(four.strands == 4);
  for (int s = 0; s < 4; ++s) CHECK_FALSE(free_reduce(delete_strands(four, {s})).word.empty());
  const auto abcd = compose_blocks(parse_polynomial("abcd", 4));
  CHECK(abcd == brunnian_block(4));
}

TEST_CASE("composed braids are pure and cut like their polynomials") {
  for (int n = 2; n <= 5; ++n)
    for (int m = 0; m <= n - 2; ++m) {
      const auto p = generate_m_resistant(n, m);
      const auto b = compose_blocks(p);
      CHECK(is_pure(b));
      for (RingMask s = 1; s < full_mask(n); ++s) {
        std::vector<int> strands;
        for (int i = 0; i < n; ++i)
          if (s >> i & 1) strands.push_back(i);
        const bool unlinked = free_reduce(delete_strands(b, strands)).word.empty();
        const bool apart = std::holds_alternative<FullyDisconnected>(
            connectivity(cut(p, s), full_mask(n) & ~s));
        CHECK(unlinked == apart);
      }
    }
}

TEST_CASE("free reduction") {
  CHECK(free_reduce(BraidWord{3, {1, 2, -2, -1, 2}}).word == std::vector<int>{2});
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    auto b = compose_blocks(generate_m_resistant(4, trial % 3));
    const std::vector<int> clean = b.word;
    for (int k = 0; k < 5; ++k) {
      const int g = static_cast<int>(rng() % 3) + 1;
      const auto at = b.word.begin() + static_cast<long>(rng() % (b.word.size() + 1));
      b.word.insert(at, {g, -g});
    }
    CHECK(linking_matrix(b) == linking_matrix(free_reduce(b)));
    CHECK(free_reduce(b) == free_reduce(BraidWord{4, clean}));
  }
  const auto b3 = brunnian_block(3);
  const auto inv = inverse(b3);
  BraidWord both{3, b3.word};
  both.word.insert(both.word.end(), inv.word.begin(), inv.word.end());
  CHECK(free_reduce(both).word.empty());
}

TEST_CASE("permutations and validation") {
  CHECK(braid_permutation(BraidWord{3, {1}}) == std::vector<int>{1, 0, 2});
  CHECK_FALSE(is_pure(BraidWord{3, {1, 2}}));
  CHECK_THROWS(linking_matrix(BraidWord{2, {1}}));
  CHECK_THROWS(check_braid(BraidWord{2, {2}}));
  CHECK_THROWS(check_braid(BraidWord{2, {0}}));
}

TEST_CASE("text form") {
  const auto b = brunnian_block(3);
  CHECK(braid_to_string(b) == "s:3 w:1 -2 1 -2 1 -2");
  CHECK(parse_braid(braid_to_string(b)) == b);
  CHECK(parse_braid("s:2 w:") == BraidWord{2, {}});
  CHECK_THROWS(parse_braid("w:1"));
  CHECK_THROWS(parse_braid("s:2 w:1 x"));
  CHECK_THROWS(parse_braid("s:2 w:3"));
}

TEST_CASE("diagrams") {
  const auto d = build_diagram(brunnian_block(3));
  CHECK(d.crossings.size() == 6);
  CHECK(d.colors == std::vector<std::string>{"#d62728", "#2ca02c", "#1f77b4"});
  const auto svg = render_svg(brunnian_block(3));
  CHECK(svg == golden("brunnian_block_3.svg"));
  CHECK(svg == render_svg(brunnian_block(3)));
  for (const auto& c : d.colors) CHECK(svg.find(c) != std::string::npos);
  const auto flat = build_diagram(BraidWord{3, {}});
  CHECK(flat.crossings.empty());
  CHECK(render_svg(BraidWord{3, {}}).find("<svg") != std::string::npos);
  const auto four = build_diagram(compose_blocks(parse_polynomial("abcd", 4)));
  CHECK(four.strands == 4);
  CHECK(four.crossings.size() == 16);
  CHECK(count(render_svg(brunnian_block(3)), "#e6c619") == 0);
  CHECK_THROWS(render_svg(BraidWord{9, {}}));
}
