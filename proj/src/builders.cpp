#include "mres/builders.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mres {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_nm(int n, int m, int max_m) {
  if (n < 2) throw std::invalid_argument("need at least two qubits");
  if (m < 0 || m > max_m)
    throw std::invalid_argument("m = " + std::to_string(m) + " out of range for n = " +
                                std::to_string(n));
}

// All size-element subsets of {0..n-1}, lexicographic.
std::vector<std::vector<int>> subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(size);
  for (int i = 0; i < size; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int i = size - 1;
    while (i >= 0 && s[i] == n - size + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < size; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

// |E_m> placed on `sites` of an n-qubit register, zeros elsewhere.
SparseKet placed_block(int n, int m, const std::vector<int>& sites) {
  SparseKet out(std::vector<int>(n, 2));
  Label l(n, 0);
  out.add(l, m + 1.0);
  for (int s : sites) l[s] = 1;
  out.add(l, 1.0);
  return out;
}

}  // namespace

SparseKet ghz(int n) {
  if (n < 2) throw std::invalid_argument("GHZ needs at least two qubits");
  return e_block(0, n).normalized();
}

SparseKet w3() {
  SparseKet w(std::vector<int>(3, 2));
  w.add({1, 0, 0}, 1.0);
  w.add({0, 1, 0}, 1.0);
  w.add({0, 0, 1}, 1.0);
  return w.normalized();
}

SparseKet e_block(int m, int size) {
  if (size < 2) throw std::invalid_argument("E block needs at least two sites");
  if (m < 0) throw std::invalid_argument("E block needs m >= 0");
  std::vector<int> all(size);
  for (int i = 0; i < size; ++i) all[i] = i;
  return placed_block(size, m, all);
}

std::vector<SparseKet> mixed_from_polynomial(int n, int m) {
  check_nm(n, m, n - 2);
  const auto groups = subsets(n, n - m);
  const int env = std::max<int>(2, static_cast<int>(groups.size()));
  if (env > 255) throw std::invalid_argument("environment too large");
  std::vector<SparseKet> terms;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    SparseKet tag(std::vector<int>{env});
    tag.add({static_cast<std::uint8_t>(i)}, 1.0);
    terms.push_back(tensor(placed_block(n, m, groups[i]), tag));
  }
  return terms;
}

State mixture_state(const std::vector<SparseKet>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty mixture");
  SparseKet sum(terms.front().dims());
  for (const auto& t : terms) sum = sum + t;
  return State{sum.normalized(), {sum.site_count() - 1}};
}

SparseKet pure_ansatz(int n, int m) {
  check_nm(n, m, n - 2);
  SparseKet sum(std::vector<int>(n, 2));
  for (const auto& g : subsets(n, n - m)) sum = sum + placed_block(n, m, g);
  return sum.normalized();
}

SparseKet majorana_state(const Constellation& c) {
  const int n = static_cast<int>(c.stars.size());
  if (n < 1) throw std::invalid_argument("constellation needs at least one star");
  if (n > 10) throw std::invalid_argument("majorana_state supports at most 10 stars");
  // Coefficients of prod_k (a_k + b_k x); the symmetrized sum spreads the
  // x^j coefficient evenly over the C(n, j) labels with j ones.
  std::vector<Complex> poly{1.0};
  for (const auto& s : c.stars) {
    if (!(s.theta >= 0 && s.theta <= std::numbers::pi))
      throw std::invalid_argument("star polar angle outside [0, pi]");
    const Complex a = std::cos(s.theta / 2);
    const Complex b = std::polar(std::sin(s.theta / 2), s.phi);
    std::vector<Complex> next(poly.size() + 1);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] += a * poly[j];
      next[j + 1] += b * poly[j];
    }
    poly = std::move(next);
  }
  SparseKet psi(std::vector<int>(n, 2));
  for (unsigned bits = 0; bits < (1u << n); ++bits) {
    const int ones = std::popcount(bits);
    const Complex amp = poly[ones] / binomial(n, ones);
    if (std::abs(amp) < tol::prune) continue;
    Label l(n);
    for (int i = 0; i < n; ++i) l[i] = (bits >> (n - 1 - i)) & 1u;
    psi.add(l, amp);
  }
  return psi.normalized();
}

SparseKet dicke(int n, int m) {
  if (n < 1 || m < 0 || m > n) throw std::invalid_argument("dicke needs 0 <= m <= n");
  SparseKet out(std::vector<int>(n, 2));
  Label l(n, 1);
  for (int i = 0; i < m; ++i) l[i] = 0;
  std::sort(l.begin(), l.end());
  do {
    out.add(l, 1.0);
  } while (std::next_permutation(l.begin(), l.end()));
  return out.normalized();
}

SparseKet psi_family(int n, int m) {
  check_nm(n, m, n - 1);
  const double c = binomial(n, m);
  SparseKet zero(std::vector<int>(n, 2));
  zero.add(Label(n, 0), std::sqrt(c));
  const double sign = (n + m) % 2 == 0 ? 1.0 : -1.0;
  return (zero + dicke(n, m).scaled(-sign)).scaled(1.0 / std::sqrt(1 + c));
}

Constellation pole_equator_constellation(int n, int m) {
  if (n < 1 || m < 0 || m >= n) throw std::invalid_argument("need 0 <= m < n");
  Constellation c;
  for (int i = 0; i < m; ++i) c.stars.push_back({0.0, 0.0});
  const int e = n - m;
  for (int i = 0; i < e; ++i)
    c.stars.push_back({std::numbers::pi / 2, 2 * std::numbers::pi * i / e});
  return c;
}

Constellation lifted_constellation(int n, int lifted, double theta) {
  if (n < 3) throw std::invalid_argument("need at least three stars");
  const int e = n - 1;
  if (lifted < 1 || lifted > e || e % lifted != 0)
    throw std::invalid_argument("lifted count must divide the equatorial star count");
  Constellation c = pole_equator_constellation(n, 1);
  for (int j = 0; j < lifted; ++j) c.stars[1 + j * (e / lifted)].theta = theta;
  return c;
}

}  // namespace mres
