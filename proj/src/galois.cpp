#include "mres/galois.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace mres {

namespace {

using Poly = std::vector<int>;  // low degree first

int degree_of(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

int inv_mod_prime(int a, int p) {
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::invalid_argument("no inverse");
}

// Remainder of a modulo b over GF(p); b must be nonzero.
Poly poly_mod(Poly a, const Poly& b, int p) {
  const int db = degree_of(b);
  const int lead_inv = inv_mod_prime(b[db], p);
  for (int da = degree_of(a); da >= db; da = degree_of(a)) {
    const int f = a[da] * lead_inv % p;
    for (int i = 0; i <= db; ++i) a[da - db + i] = ((a[da - db + i] - f * b[i]) % p + p) % p;
  }
  return a;
}

Poly digits(int v, int p, int n) {
  Poly d(n, 0);
  for (int i = 0; i < n; ++i, v /= p) d[i] = v % p;
  return d;
}

int undigits(const Poly& d, int p) {
  int v = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p + d[i];
  return v;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int i = 2; i * i <= p; ++i)
    if (p % i == 0) return false;
  return true;
}

}  // namespace

bool is_irreducible(int p, const std::vector<int>& coeffs) {
  const int n = degree_of(coeffs);
  if (n < 1) return false;
  if (n == 1) return true;
  for (int d = 1; d <= n / 2; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int low = 0; low < count; ++low) {
      Poly divisor = digits(low, p, d);
      divisor.push_back(1);
      if (degree_of(poly_mod(coeffs, divisor, p)) < 0) return false;
    }
  }
  return true;
}

FieldSpec::FieldSpec(int p, int n, std::vector<int> modulus)
    : p_(p), n_(n), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < n; ++i) q_ *= p;
  if (n > 1 && !is_irreducible(p, modulus_))
    throw std::logic_error("field modulus is reducible");
  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  for (int a = 0; a < q_; ++a) {
    const Poly da = digits(a, p, n);
    for (int b = 0; b < q_; ++b) {
      const Poly db = digits(b, p, n);
      Poly sum(n);
      for (int i = 0; i < n; ++i) sum[i] = (da[i] + db[i]) % p;
      add_[index(a, b)] = undigits(sum, p);

      Poly prod(2 * n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      Poly rem = n == 1 ? Poly{prod[0]} : poly_mod(prod, modulus_, p);
      rem.resize(n, 0);
      mul_[index(a, b)] = undigits(rem, p);
    }
  }
}

std::size_t FieldSpec::index(int a, int b) const {
  if (a < 0 || a >= q_ || b < 0 || b >= q_)
    throw std::out_of_range("field element out of range for GF(" + std::to_string(q_) + ")");
  return static_cast<std::size_t>(a) * q_ + b;
}

int FieldSpec::neg(int a) const {
  for (int x = 0; x < q_; ++x)
    if (add(a, x) == 0) return x;
  throw std::logic_error("additive inverse missing");
}

int FieldSpec::inv(int a) const {
  if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
  for (int x = 1; x < q_; ++x)
    if (mul(a, x) == 1) return x;
  throw std::logic_error("multiplicative inverse missing");
}

FieldPtr field(int q) {
  static std::mutex mu;
  static std::map<int, FieldPtr> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(q); it != cache.end()) return it->second;

  int p = 0, n = 0;
  std::vector<int> modulus;
  switch (q) {
    case 4: p = 2, n = 2, modulus = {1, 1, 1}; break;
    case 8: p = 2, n = 3, modulus = {1, 1, 0, 1}; break;
    case 9: p = 3, n = 2, modulus = {1, 0, 1}; break;
    default:
      if (q > 9 || !is_prime(q))
        throw std::invalid_argument("unsupported field order " + std::to_string(q) +
                                    " (need a prime power <= 9)");
      p = q, n = 1, modulus = {0, 1};
  }
  FieldPtr spec(new FieldSpec(p, n, std::move(modulus)));
  cache.emplace(q, spec);
  return spec;
}

FieldElement::FieldElement(FieldPtr spec, int value) : spec_(std::move(spec)), value_(value) {
  if (!spec_) throw std::invalid_argument("null field");
  if (value < 0 || value >= spec_->order())
    throw std::out_of_range("field element out of range");
}

void FieldElement::same_field(const FieldElement& o) const {
  if (spec_->order() != o.spec_->order())
    throw std::invalid_argument("field elements from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  same_field(o);
  return {spec_, spec_->add(value_, o.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  same_field(o);
  return {spec_, spec_->add(value_, spec_->neg(o.value_))};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  same_field(o);
  return {spec_, spec_->mul(value_, o.value_)};
}

FieldElement FieldElement::operator-() const { return {spec_, spec_->neg(value_)}; }

FieldElement FieldElement::inv() const { return {spec_, spec_->inv(value_)}; }

}  // namespace mres
