#pragma once

// Orthogonal arrays OA(r, N, d, k): r rows over symbols 0..d-1 in which every
// choice of k columns shows every k-tuple equally often (lambda times).

#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mres/qstate.hpp"

namespace mres {

class OrthogonalArray {
 public:
  OrthogonalArray() = default;
  /// Rows must share a length; every entry < d. `strength` is the claim
  /// carried along; it is not checked here (see validate_strength).
  OrthogonalArray(int d, int strength, std::vector<std::vector<int>> rows);

  int rows() const { return static_cast<int>(rows_.size()); }
  int columns() const { return cols_; }
  int alphabet() const { return d_; }
  int strength() const { return k_; }
  const std::vector<std::vector<int>>& table() const { return rows_; }
  int at(int r, int c) const { return rows_[r][c]; }

  friend bool operator==(const OrthogonalArray&, const OrthogonalArray&) = default;

 private:
  int d_ = 0, k_ = 0, cols_ = 0;
  std::vector<std::vector<int>> rows_;
};

struct StrengthFailure {
  std::vector<int> columns;  // first offending subset, lexicographic order
  std::vector<int> tuple;    // first tuple whose count differs
  int count = 0;             // how often that tuple occurs
  int expected = 0;          // r / d^k (0 when r is not a multiple)
};

/// The index lambda on success.
using StrengthResult = std::variant<int, StrengthFailure>;

StrengthResult validate_strength(const OrthogonalArray& oa, int k);

/// Index-unity OA(d^k, d+1, d, k) from polynomials of degree < k over GF(d).
/// Row order: coefficient tuples, highest degree most significant.
/// Columns: leading coefficient, then f(0), f(1), ..., f(d-1).
OrthogonalArray construct_bush(int d, int k);

/// Drops the listed columns. Throws if fewer than `strength` columns remain.
OrthogonalArray delete_columns(const OrthogonalArray& oa, std::span<const int> cols);

/// Equal-weight superposition of the row labels, normalized.
SparseKet oa_to_state(const OrthogonalArray& oa);

/// Text form: header "OA r N d k", then one row per line, symbols separated
/// by single spaces.
std::string write_oa(const OrthogonalArray& oa);
OrthogonalArray read_oa(std::istream& in);
OrthogonalArray read_oa(const std::string& text);

}  // namespace mres
