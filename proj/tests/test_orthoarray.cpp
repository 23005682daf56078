#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mres/orthoarray.hpp"

using namespace mres;

namespace {

OrthogonalArray fixture(const std::string& name) {
  std::ifstream in(std::string(MRES_FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  return read_oa(in);
}

}  // namespace

TEST_CASE("Bush array for d=4, k=2 row by row") {
  const std::vector<std::vector<int>> table = {
      {0, 0, 0, 0, 0}, {0, 1, 1, 1, 1}, {0, 2, 2, 2, 2}, {0, 3, 3, 3, 3},
      {1, 0, 1, 2, 3}, {1, 1, 0, 3, 2}, {1, 2, 3, 0, 1}, {1, 3, 2, 1, 0},
      {2, 0, 2, 3, 1}, {2, 1, 3, 2, 0}, {2, 2, 0, 1, 3}, {2, 3, 1, 0, 2},
      {3, 0, 3, 1, 2}, {3, 1, 2, 0, 3}, {3, 2, 1, 3, 0}, {3, 3, 0, 2, 1}};
  const auto oa = construct_bush(4, 2);
  CHECK(oa.table() == table);
  CHECK(std::get<int>(validate_strength(oa, 2)) == 1);
  const auto f = validate_strength(oa, 3);
  REQUIRE(std::holds_alternative<StrengthFailure>(f));
  CHECK(std::get<StrengthFailure>(f).expected == 0);
}

TEST_CASE("one column of every symbol has strength 1") {
  for (int d : {2, 5}) {
    std::vector<std::vector<int>> rows;
    for (int s = 0; s < d; ++s) rows.push_back({s});
    CHECK(std::get<int>(validate_strength(OrthogonalArray(d, 1, rows), 1)) == 1);
  }
}

TEST_CASE("Bush arrays have index one") {
  for (int d : {2, 3, 4, 5, 7, 8, 9})
    for (int k = 1; k < d; ++k) {
      std::size_t rows = 1;
      for (int i = 0; i < k; ++i) rows *= d;
      if (rows > 4096) continue;
      CAPTURE(d);
      CAPTURE(k);
      const auto oa = construct_bush(d, k);
      CHECK(oa.rows() == static_cast<int>(rows));
      CHECK(oa.columns() == d + 1);
      const auto r = validate_strength(oa, k);
      REQUIRE(std::holds_alternative<int>(r));
      CHECK(std::get<int>(r) == 1);
    }
  CHECK_THROWS(construct_bush(6, 2));
  CHECK_THROWS(construct_bush(4, 4));
}

TEST_CASE("distinct rows agree in at most k-1 places") {
  for (auto [d, k] : {std::pair{4, 2}, {5, 2}, {5, 3}, {7, 2}, {8, 3}}) {
    const auto oa = construct_bush(d, k);
    int worst = 0;
    for (int a = 0; a < oa.rows(); ++a)
      for (int b = a + 1; b < oa.rows(); ++b) {
        int same = 0;
        for (int c = 0; c < oa.columns(); ++c) same += oa.at(a, c) == oa.at(b, c);
        worst = std::max(worst, same);
      }
    CHECK(worst <= k - 1);
  }
}

TEST_CASE("column deletion") {
  const auto oa = construct_bush(7, 2);
  const std::vector<int> last{7};
  const auto cut = delete_columns(oa, last);
  CHECK(cut.rows() == 49);
  CHECK(cut.columns() == 7);
  CHECK(std::get<int>(validate_strength(cut, 2)) == 1);
  CHECK(delete_columns(oa, std::vector<int>{}) == oa);
  const std::vector<int> four{1, 2, 3, 4};
  CHECK_THROWS(delete_columns(construct_bush(4, 2), four));
}

TEST_CASE("reported failure points at the offending columns") {
  auto rows = construct_bush(3, 2).table();
  rows[0][2] = (rows[0][2] + 1) % 3;
  const auto r = validate_strength(OrthogonalArray(3, 2, rows), 2);
  REQUIRE(std::holds_alternative<StrengthFailure>(r));
  const auto& f = std::get<StrengthFailure>(r);
  CHECK(f.expected == 1);
  CHECK(f.count != 1);
  CHECK(std::find(f.columns.begin(), f.columns.end(), 2) != f.columns.end());
}

TEST_CASE("states read off arrays") {
  const auto psi = oa_to_state(construct_bush(4, 2));
  CHECK(psi.term_count() == 16);
  CHECK(psi.norm() == doctest::Approx(1.0));
  CHECK(std::abs(psi.amplitude(label_from_string("33021", psi.dims())) - 0.25) < 1e-15);
  CHECK(oa_to_state(construct_bush(5, 2)).term_count() == 25);
  const auto single = oa_to_state(OrthogonalArray(3, 1, {{2, 0, 1}}));
  CHECK(single.term_count() == 1);
  CHECK(single.norm() == doctest::Approx(1.0));
}

TEST_CASE("text form round-trips") {
  const auto oa = construct_bush(5, 2);
  const auto text = write_oa(oa);
  CHECK(text.rfind("OA 25 6 5 2\n", 0) == 0);
  CHECK(read_oa(text) == oa);
  CHECK(write_oa(read_oa(text)) == text);
  CHECK_THROWS(read_oa(std::string("OA 2 2 2 1\n0 1\n")));
  CHECK_THROWS(read_oa(std::string("OA 1 2 2 1\n0 2\n")));
}

TEST_CASE("shipped arrays") {
  const auto a5 = fixture("oa_6_1_5.txt");
  CHECK(a5.rows() == 25);
  CHECK(a5.columns() == 6);
  CHECK(std::get<int>(validate_strength(a5, 2)) == 1);
  const auto a7 = fixture("oa_8_1_7.txt");
  CHECK(a7.rows() == 49);
  CHECK(a7.columns() == 8);
  CHECK(std::get<int>(validate_strength(a7, 2)) == 1);
}
