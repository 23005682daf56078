#include "mres/linkpoly.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace mres {

RingMask full_mask(int n) { return n >= 32 ? ~RingMask{0} : (RingMask{1} << n) - 1; }

int popcount(RingMask m) { return std::popcount(m); }

namespace {

void check_ring_count(int n) {
  if (n < 1 || n > kMaxRings)
    throw std::invalid_argument("ring count must be in [1, 26], got " + std::to_string(n));
}

bool check_canonical(int rings, const std::vector<RingMask>& monos) {
  RingMask cover = 0;
  for (RingMask m : monos) cover |= m;
  if (cover != full_mask(rings)) return false;
  return std::none_of(monos.begin(), monos.end(),
                      [&](RingMask m) { return is_redundant(m, monos); });
}

}  // namespace

LinkPolynomial::LinkPolynomial(int ring_count, std::vector<RingMask> monomials)
    : rings_(ring_count) {
  check_ring_count(ring_count);
  const RingMask all = full_mask(ring_count);
  for (RingMask m : monomials) {
    if (m & ~all)
      throw std::invalid_argument("monomial uses a ring outside [0, " +
                                  std::to_string(ring_count) + ")");
  }
  std::erase_if(monomials, [](RingMask m) { return std::popcount(m) < 2; });
  std::sort(monomials.begin(), monomials.end());
  monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
  monos_ = std::move(monomials);
  canonical_ = check_canonical(rings_, monos_);
}

std::string LinkPolynomial::to_string() const {
  if (monos_.empty()) return "0";
  std::vector<std::string> terms;
  terms.reserve(monos_.size());
  for (RingMask m : monos_) terms.push_back(monomial_name(m));
  std::sort(terms.begin(), terms.end());
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += '+';
    out += t;
  }
  return out;
}

std::string monomial_name(RingMask m) {
  std::string s;
  for (int i = 0; i < kMaxRings; ++i)
    if (m >> i & 1u) s += static_cast<char>('a' + i);
  return s;
}

LinkPolynomial parse_polynomial(const std::string& text, int ring_count) {
  check_ring_count(ring_count);
  if (text.find_first_not_of(" 0") == std::string::npos) return LinkPolynomial(ring_count, {});
  std::vector<RingMask> monos;
  RingMask current = 0;
  bool in_term = false;
  auto flush = [&] {
    if (!in_term) throw std::invalid_argument("empty term in polynomial '" + text + "'");
    monos.push_back(current);
    current = 0;
    in_term = false;
  };
  for (char c : text) {
    if (c == ' ') continue;
    if (c == '+') {
      flush();
      continue;
    }
    if (c < 'a' || c >= 'a' + ring_count)
      throw std::invalid_argument(std::string("ring letter '") + c + "' out of range");
    current |= RingMask{1} << (c - 'a');
    in_term = true;
  }
  flush();
  return LinkPolynomial(ring_count, std::move(monos));
}

bool spans_connected(std::span<const RingMask> edges, RingMask vertices) {
  if (vertices == 0) return false;
  RingMask reach = vertices & (~vertices + 1);
  bool grew = true;
  while (grew && reach != vertices) {
    grew = false;
    for (RingMask e : edges) {
      const RingMask inside = e & vertices;
      if ((inside & reach) && (inside & ~reach)) {
        reach |= inside;
        grew = true;
      }
    }
  }
  return reach == vertices;
}

bool is_redundant(RingMask m, std::span<const RingMask> family) {
  thread_local std::vector<RingMask> sub;
  sub.clear();
  for (RingMask f : family)
    if (f != m && (f & m) == f) sub.push_back(f);
  return !sub.empty() && spans_connected(sub, m);
}

LinkPolynomial canonicalize_in_order(const LinkPolynomial& p,
                                     std::span<const std::size_t> order) {
  const auto& src = p.monomials();
  if (order.size() != src.size())
    throw std::invalid_argument("removal order must list every monomial once");
  std::vector<RingMask> visit;
  visit.reserve(order.size());
  for (std::size_t i : order) {
    if (i >= src.size()) throw std::invalid_argument("removal order index out of range");
    visit.push_back(src[i]);
  }
  std::vector<RingMask> current = src;
  bool removed = true;
  while (removed) {
    removed = false;
    for (RingMask m : visit) {
      auto it = std::find(current.begin(), current.end(), m);
      if (it == current.end()) continue;
      if (is_redundant(m, current)) {
        current.erase(it);
        removed = true;
      }
    }
  }
  return LinkPolynomial(p.ring_count(), std::move(current));
}

LinkPolynomial canonicalize(const LinkPolynomial& p) {
  std::vector<std::size_t> order(p.monomials().size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return canonicalize_in_order(p, order);
}

LinkPolynomial cut(const LinkPolynomial& p, RingMask rings) {
  if (rings & ~full_mask(p.ring_count()))
    throw std::invalid_argument("cut ring index out of range");
  std::vector<RingMask> kept;
  for (RingMask m : p.monomials())
    if (!(m & rings)) kept.push_back(m);
  return canonicalize(LinkPolynomial(p.ring_count(), std::move(kept)));
}

ConnectivityStatus connectivity(const LinkPolynomial& p, RingMask surviving) {
  std::vector<RingMask> edges;
  for (RingMask m : p.monomials())
    if ((m & surviving) == m) edges.push_back(m);
  if (edges.empty()) return FullyDisconnected{};

  std::vector<RingMask> comps;
  RingMask left = surviving;
  while (left) {
    RingMask reach = left & (~left + 1);
    bool grew = true;
    while (grew) {
      grew = false;
      for (RingMask e : edges) {
        if ((e & reach) && (e & ~reach)) {
          reach |= e;
          grew = true;
        }
      }
    }
    comps.push_back(reach);
    left &= ~reach;
  }
  if (comps.size() == 1) return FullyConnected{};
  return PartiallyConnected{std::move(comps)};
}

LinkPolynomial generate_m_resistant(int n, int m) {
  check_ring_count(n);
  if (m < 0 || m > n - 2)
    throw std::invalid_argument("resistance m must satisfy 0 <= m <= n-2");
  std::vector<RingMask> monos;
  for (RingMask s = 0; s <= full_mask(n); ++s)
    if (std::popcount(s) == n - m) monos.push_back(s);
  return LinkPolynomial(n, std::move(monos));
}

std::optional<int> is_m_resistant_link(const LinkPolynomial& p) {
  const int n = p.ring_count();
  const RingMask all = full_mask(n);
  for (int m = 0; m <= n - 2; ++m) {
    bool ok = true;
    for (RingMask s = 0; s <= all && ok; ++s) {
      const int c = std::popcount(s);
      if (c == m) {
        ok = std::holds_alternative<FullyConnected>(connectivity(p, all & ~s));
      } else if (c == m + 1) {
        ok = std::holds_alternative<FullyDisconnected>(connectivity(p, all & ~s));
      }
    }
    if (ok) return m;
  }
  return std::nullopt;
}

namespace {

RingMask relabel(RingMask m, std::span<const int> perm) {
  RingMask out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (m >> i & 1u) out |= RingMask{1} << perm[i];
  return out;
}

}  // namespace

LinkPolynomial canonical_form(const LinkPolynomial& p) {
  const int n = p.ring_count();
  if (n > 8) throw std::invalid_argument("canonical_form supports at most 8 rings");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<RingMask> best = p.monomials();
  std::vector<RingMask> cand(best.size());
  do {
    for (std::size_t i = 0; i < best.size(); ++i) cand[i] = relabel(p.monomials()[i], perm);
    std::sort(cand.begin(), cand.end());
    if (cand < best) best = cand;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return LinkPolynomial(n, std::move(best));
}

namespace {

// Families are encoded as 64-bit sets indexed by monomial mask value, which
// caps the enumeration at six rings.
class ClassEnumerator {
 public:
  explicit ClassEnumerator(int n) : n_(n), all_(full_mask(n)) {
    for (RingMask m = 0; m <= all_; ++m)
      if (std::popcount(m) >= 2) candidates_.push_back(m);
    std::stable_sort(candidates_.begin(), candidates_.end(), [](RingMask a, RingMask b) {
      return std::popcount(a) < std::popcount(b);
    });
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::uint8_t> table(all_ + 1);
      for (RingMask m = 0; m <= all_; ++m) table[m] = static_cast<std::uint8_t>(relabel(m, perm));
      perms_.push_back(std::move(table));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::size_t candidate_count() const { return candidates_.size(); }

  // Explores all families whose first `prefix_len` decisions match `prefix`.
  void run(std::uint64_t prefix, std::size_t prefix_len, std::unordered_set<std::uint64_t>& out) const {
    std::vector<RingMask> chosen;
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < prefix_len; ++i) {
      if (prefix >> i & 1u) {
        const RingMask m = candidates_[i];
        if (is_redundant(m, chosen)) return;
        chosen.push_back(m);
        key |= std::uint64_t{1} << m;
      }
    }
    dfs(prefix_len, chosen, key, out);
  }

 private:
  // Candidates are visited by increasing size, so every proper sub-monomial
  // of a candidate is already decided when the candidate is considered.
  void dfs(std::size_t idx, std::vector<RingMask>& chosen, std::uint64_t key,
           std::unordered_set<std::uint64_t>& out) const {
    if (idx == candidates_.size()) {
      RingMask cover = 0;
      for (RingMask m : chosen) cover |= m;
      if (cover != all_ || !spans_connected(chosen, all_)) return;
      out.insert(orbit_key(key));
      return;
    }
    dfs(idx + 1, chosen, key, out);
    const RingMask m = candidates_[idx];
    if (!is_redundant(m, chosen)) {
      chosen.push_back(m);
      dfs(idx + 1, chosen, key | std::uint64_t{1} << m, out);
      chosen.pop_back();
    }
  }

  std::uint64_t orbit_key(std::uint64_t key) const {
    std::uint64_t best = ~std::uint64_t{0};
    for (const auto& table : perms_) {
      std::uint64_t k = 0;
      for (std::uint64_t rest = key; rest; rest &= rest - 1)
        k |= std::uint64_t{1} << table[std::countr_zero(rest)];
      best = std::min(best, k);
    }
    return best;
  }

  int n_;
  RingMask all_;
  std::vector<RingMask> candidates_;
  std::vector<std::vector<std::uint8_t>> perms_;
};

}  // namespace

LinkClassCensus enumerate_classes(int n, unsigned threads) {
  if (n < 2 || n > 6) throw std::invalid_argument("enumerate_classes supports 2 <= n <= 6");
  ClassEnumerator en(n);
  const std::size_t prefix_len = std::min<std::size_t>(en.candidate_count(), 6);
  const std::uint64_t prefixes = std::uint64_t{1} << prefix_len;
  threads = std::max(1u, threads);

  std::vector<std::unordered_set<std::uint64_t>> partial(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint64_t p = t; p < prefixes; p += threads) en.run(p, prefix_len, partial[t]);
    });
  }
  for (auto& th : pool) th.join();

  std::unordered_set<std::uint64_t> orbits;
  for (auto& s : partial) orbits.insert(s.begin(), s.end());

  LinkClassCensus census;
  census.ring_count = n;
  census.class_count = orbits.size();
  for (std::uint64_t key : orbits) {
    std::vector<RingMask> monos;
    for (std::uint64_t rest = key; rest; rest &= rest - 1)
      monos.push_back(static_cast<RingMask>(std::countr_zero(rest)));
    census.representatives.push_back(canonical_form(LinkPolynomial(n, std::move(monos))));
  }
  std::sort(census.representatives.begin(), census.representatives.end(),
            [](const LinkPolynomial& a, const LinkPolynomial& b) {
              if (a.monomials().size() != b.monomials().size())
                return a.monomials().size() < b.monomials().size();
              return a.monomials() < b.monomials();
            });
  return census;
}

}  // namespace mres
