#pragma once

// Link polynomials: multilinear polynomials whose monomials record which
// subsets of rings are linked. Setting a ring variable to zero models
// cutting that ring.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace mres {

/// Bit i set means ring i (named 'a' + i) takes part in the monomial.
using RingMask = std::uint32_t;

inline constexpr int kMaxRings = 26;

class LinkPolynomial {
 public:
  LinkPolynomial() = default;

  /// Applies set semantics (no repeated monomials) and drops monomials with
  /// fewer than two rings. Redundant monomials are kept; see canonicalize().
  LinkPolynomial(int ring_count, std::vector<RingMask> monomials);

  int ring_count() const { return rings_; }
  /// Sorted ascending by mask value.
  const std::vector<RingMask>& monomials() const { return monos_; }
  bool empty() const { return monos_.empty(); }

  /// No redundant monomial and every ring appears somewhere.
  bool canonical() const { return canonical_; }

  /// Terms joined with '+', each term spelled with ring letters, terms
  /// sorted lexicographically. The empty polynomial prints as "0".
  std::string to_string() const;

  friend bool operator==(const LinkPolynomial&, const LinkPolynomial&) = default;

 private:
  int rings_ = 0;
  std::vector<RingMask> monos_;
  bool canonical_ = false;
};

/// Parses "ab+bc" style text. Repeated letters inside a term collapse
/// ("aab" is "ab"). Letters must be below 'a' + ring_count.
LinkPolynomial parse_polynomial(const std::string& text, int ring_count);

/// Monomial in letter form, e.g. 0b101 -> "ac".
std::string monomial_name(RingMask m);

/// True when the hyperedges connect every vertex in `vertices` into a single
/// component. Hyperedges are intersected with `vertices` first.
bool spans_connected(std::span<const RingMask> edges, RingMask vertices);

/// A monomial is redundant when its proper sub-monomials already link all of
/// its rings together.
bool is_redundant(RingMask m, std::span<const RingMask> family);

/// Removes redundant monomials until none remain.
LinkPolynomial canonicalize(const LinkPolynomial& p);

/// Same fixpoint as canonicalize(), but monomials are visited for removal in
/// the given order (indices into p.monomials()), one removal at a time.
LinkPolynomial canonicalize_in_order(const LinkPolynomial& p,
                                     std::span<const std::size_t> order);

/// Sets every listed ring to zero. ring_count is unchanged.
LinkPolynomial cut(const LinkPolynomial& p, RingMask rings);

struct FullyConnected {
  friend bool operator==(const FullyConnected&, const FullyConnected&) = default;
};
struct PartiallyConnected {
  std::vector<RingMask> components;  // sorted by lowest ring
  friend bool operator==(const PartiallyConnected&, const PartiallyConnected&) = default;
};
struct FullyDisconnected {
  friend bool operator==(const FullyDisconnected&, const FullyDisconnected&) = default;
};
using ConnectivityStatus =
    std::variant<FullyConnected, PartiallyConnected, FullyDisconnected>;

/// Component structure of the hypergraph restricted to `surviving`.
/// Monomials touching a non-surviving ring are ignored.
ConnectivityStatus connectivity(const LinkPolynomial& p, RingMask surviving);

/// All C(n, n-m) monomials with n-m rings.
LinkPolynomial generate_m_resistant(int n, int m);

/// m such that any m cuts leave the survivors fully connected and any m+1
/// cuts leave nothing linked.
std::optional<int> is_m_resistant_link(const LinkPolynomial& p);

/// Lexicographically minimal sorted monomial list over all relabelings.
LinkPolynomial canonical_form(const LinkPolynomial& p);

struct LinkClassCensus {
  int ring_count = 0;
  std::size_t class_count = 0;
  std::vector<LinkPolynomial> representatives;  // sorted by monomial list
};

/// Counts connected links of n rings up to relabeling. Supports n <= 6;
/// n = 6 is not practical.
LinkClassCensus enumerate_classes(int n, unsigned threads = 1);

RingMask full_mask(int n);
int popcount(RingMask m);

}  // namespace mres
