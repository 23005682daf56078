#pragma once

// Finite fields GF(q), q = p^n <= 9, with one fixed modulus per order.
// Elements are encoded as integers in [0, q): the base-p digits are the
// polynomial coefficients, constant term least significant. So in GF(4),
// 2 is x and 3 is x + 1.

#include <memory>
#include <vector>

namespace mres {

class FieldSpec {
 public:
  int characteristic() const { return p_; }
  int degree() const { return n_; }
  int order() const { return q_; }
  /// Monic modulus, coefficients from x^0 up to x^n.
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[index(a, b)]; }
  int mul(int a, int b) const { return mul_[index(a, b)]; }
  int neg(int a) const;
  int inv(int a) const;

 private:
  friend std::shared_ptr<const FieldSpec> field(int q);
  FieldSpec(int p, int n, std::vector<int> modulus);
  std::size_t index(int a, int b) const;

  int p_, n_, q_;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Supported orders: 2, 3, 4, 5, 7, 8, 9. Moduli: GF(4) x^2+x+1,
/// GF(8) x^3+x+1, GF(9) x^2+1; prime fields are integers mod p.
/// Throws std::invalid_argument for anything else.
FieldPtr field(int q);

/// Trial division by every monic polynomial of degree 1..n/2 over GF(p).
bool is_irreducible(int p, const std::vector<int>& coeffs);

class FieldElement {
 public:
  FieldElement(FieldPtr spec, int value);

  int value() const { return value_; }
  const FieldPtr& spec() const { return spec_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;

  bool operator==(const FieldElement& o) const {
    return spec_->order() == o.spec_->order() && value_ == o.value_;
  }

 private:
  void same_field(const FieldElement& o) const;

  FieldPtr spec_;
  int value_;
};

}  // namespace mres
