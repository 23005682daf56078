#include "mres/orthoarray.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "mres/galois.hpp"

namespace mres {

OrthogonalArray::OrthogonalArray(int d, int strength, std::vector<std::vector<int>> rows)
    : d_(d), k_(strength), rows_(std::move(rows)) {
  if (d < 2) throw std::invalid_argument("alphabet size must be at least 2");
  if (rows_.empty()) throw std::invalid_argument("orthogonal array needs at least one row");
  cols_ = static_cast<int>(rows_.front().size());
  if (cols_ == 0) throw std::invalid_argument("orthogonal array needs at least one column");
  if (strength < 1 || strength > cols_) throw std::invalid_argument("strength out of range");
  for (const auto& r : rows_) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged row");
    for (int v : r)
      if (v < 0 || v >= d) throw std::invalid_argument("symbol outside alphabet");
  }
}

StrengthResult validate_strength(const OrthogonalArray& oa, int k) {
  const int n = oa.columns(), d = oa.alphabet(), r = oa.rows();
  if (k < 1 || k > n) throw std::invalid_argument("strength must lie in [1, columns]");
  long long tuples = 1;
  for (int i = 0; i < k; ++i) {
    tuples *= d;
    if (tuples > 1'000'000) throw std::invalid_argument("d^k too large to validate");
  }
  const int expected = r % tuples == 0 ? static_cast<int>(r / tuples) : 0;

  std::vector<int> cols(k);
  for (int i = 0; i < k; ++i) cols[i] = i;
  std::vector<int> counts(tuples);
  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const auto& row : oa.table()) {
      long long idx = 0;
      for (int c : cols) idx = idx * d + row[c];
      ++counts[idx];
    }
    for (long long t = 0; t < tuples; ++t) {
      if (counts[t] != expected || expected == 0) {
        std::vector<int> tuple(k);
        for (long long i = k - 1, v = t; i >= 0; --i, v /= d) tuple[i] = static_cast<int>(v % d);
        return StrengthFailure{cols, std::move(tuple), counts[t], expected};
      }
    }
    int i = k - 1;
    while (i >= 0 && cols[i] == n - k + i) --i;
    if (i < 0) break;
    ++cols[i];
    for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
  return expected;
}

OrthogonalArray construct_bush(int d, int k) {
  const auto f = field(d);
  if (k < 1 || k >= d) throw std::invalid_argument("Bush construction needs 1 <= k < d");
  long long count = 1;
  for (int i = 0; i < k; ++i) count *= d;
  std::vector<std::vector<int>> rows;
  rows.reserve(count);
  std::vector<int> coeffs(k);  // coeffs[0] is the x^{k-1} coefficient
  for (long long idx = 0; idx < count; ++idx) {
    for (long long i = k - 1, v = idx; i >= 0; --i, v /= d) coeffs[i] = static_cast<int>(v % d);
    std::vector<int> row;
    row.reserve(d + 1);
    row.push_back(coeffs[0]);
    for (int alpha = 0; alpha < d; ++alpha) {
      int acc = 0;  // Horner
      for (int c : coeffs) acc = f->add(f->mul(acc, alpha), c);
      row.push_back(acc);
    }
    rows.push_back(std::move(row));
  }
  return OrthogonalArray(d, k, std::move(rows));
}

OrthogonalArray delete_columns(const OrthogonalArray& oa, std::span<const int> cols) {
  std::vector<bool> drop(oa.columns(), false);
  for (int c : cols) {
    if (c < 0 || c >= oa.columns()) throw std::invalid_argument("column index out of range");
    drop[c] = true;
  }
  int remaining = 0;
  for (bool x : drop) remaining += !x;
  if (remaining < oa.strength())
    throw std::invalid_argument("deleting these columns leaves fewer than k columns");
  std::vector<std::vector<int>> rows;
  for (const auto& r : oa.table()) {
    std::vector<int> kept;
    for (int c = 0; c < oa.columns(); ++c)
      if (!drop[c]) kept.push_back(r[c]);
    rows.push_back(std::move(kept));
  }
  return OrthogonalArray(oa.alphabet(), oa.strength(), std::move(rows));
}

SparseKet oa_to_state(const OrthogonalArray& oa) {
  SparseKet psi(std::vector<int>(oa.columns(), oa.alphabet()));
  for (const auto& r : oa.table()) psi.add(Label(r.begin(), r.end()), 1.0);
  return psi.normalized();
}

std::string write_oa(const OrthogonalArray& oa) {
  std::ostringstream out;
  out << "OA " << oa.rows() << ' ' << oa.columns() << ' ' << oa.alphabet() << ' '
      << oa.strength() << '\n';
  for (const auto& r : oa.table()) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
    out << '\n';
  }
  return out.str();
}

OrthogonalArray read_oa(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty OA input");
  std::istringstream head(line);
  std::string tag;
  int r = 0, n = 0, d = 0, k = 0;
  if (!(head >> tag >> r >> n >> d >> k) || tag != "OA" || r < 1 || n < 1)
    throw std::invalid_argument("bad OA header, expected 'OA r N d k'");
  std::vector<std::vector<int>> rows;
  while (static_cast<int>(rows.size()) < r && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<int> row;
    for (int v; ls >> v;) row.push_back(v);
    if (!ls.eof()) throw std::invalid_argument("non-numeric OA entry: " + line);
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("OA row has wrong length: " + line);
    rows.push_back(std::move(row));
  }
  if (static_cast<int>(rows.size()) != r) throw std::invalid_argument("OA has fewer rows than declared");
  return OrthogonalArray(d, k, std::move(rows));
}

OrthogonalArray read_oa(const std::string& text) {
  std::istringstream in(text);
  return read_oa(in);
}

}  // namespace mres
