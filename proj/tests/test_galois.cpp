#include <doctest.h>

#include "mres/galois.hpp"

using namespace mres;

TEST_CASE("field parameters") {
  const auto f4 = field(4);
  CHECK(f4->characteristic() == 2);
  CHECK(f4->degree() == 2);
  CHECK(f4->modulus() == std::vector<int>{1, 1, 1});
  CHECK(field(7)->characteristic() == 7);
  CHECK(field(7)->degree() == 1);
  for (int q : {0, 1, 6, 10, 11, 16}) CHECK_THROWS_AS(field(q), std::invalid_argument);
  CHECK(field(8) == field(8));
}

TEST_CASE("multiplication examples") {
  const auto f4 = field(4);
  CHECK(f4->mul(2, 2) == 3);
  CHECK(f4->mul(2, 3) == 1);
  CHECK(field(7)->mul(3, 5) == 1);
  const FieldElement x(f4, 2);
  CHECK((x * x).value() == 3);
  CHECK((x * x + x).value() == 1);
  CHECK_THROWS(FieldElement(f4, 4));
  CHECK_THROWS(FieldElement(f4, 0).inv());
  CHECK_THROWS(x + FieldElement(field(5), 2));
}

TEST_CASE("moduli are irreducible") {
  for (int q : {4, 8, 9}) {
    const auto f = field(q);
    CHECK(is_irreducible(f->characteristic(), f->modulus()));
  }
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));  // x^2 + 1 = (x + 1)^2
  CHECK_FALSE(is_irreducible(3, {2, 0, 1}));  // x^2 - 1
}

TEST_CASE("field axioms hold exhaustively") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    CAPTURE(q);
    const auto f = field(q);
    bool ok = true;
    for (int a = 0; a < q; ++a) {
      ok = ok && f->add(a, 0) == a && f->mul(a, 1) == a && f->mul(a, 0) == 0;
      ok = ok && f->add(a, f->neg(a)) == 0;
      if (a != 0) ok = ok && f->mul(a, f->inv(a)) == 1;
      for (int b = 0; b < q; ++b) {
        ok = ok && f->add(a, b) == f->add(b, a) && f->mul(a, b) == f->mul(b, a);
        if (a && b) ok = ok && f->mul(a, b) != 0;
        for (int c = 0; c < q; ++c) {
          ok = ok && f->add(f->add(a, b), c) == f->add(a, f->add(b, c));
          ok = ok && f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
          ok = ok && f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("multiplicative group is cyclic") {
  for (int q : {4, 8, 9}) {
    const auto f = field(q);
    bool found = false;
    for (int g = 2; g < q && !found; ++g) {
      int x = 1, order = 0;
      do {
        x = f->mul(x, g);
        ++order;
      } while (x != 1);
      found = order == q - 1;
    }
    CHECK(found);
  }
}
