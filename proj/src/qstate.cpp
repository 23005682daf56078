#include "mres/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace mres {

void check_dims(std::span<const int> dims) {
  if (dims.empty()) throw std::invalid_argument("state needs at least one site");
  for (int d : dims)
    if (d < 2 || d > 255) throw std::invalid_argument("site dimension must be in [2, 255]");
}

std::string label_to_string(const Label& l) {
  std::string s;
  s.reserve(l.size());
  for (auto digit : l) {
    if (digit >= 36) throw std::invalid_argument("digit too large for a text label");
    s += static_cast<char>(digit < 10 ? '0' + digit : 'a' + (digit - 10));
  }
  return s;
}

Label label_from_string(const std::string& s, std::span<const int> dims) {
  if (s.size() != dims.size())
    throw std::invalid_argument("label '" + s + "' has wrong length for " +
                                std::to_string(dims.size()) + " sites");
  Label l(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'z') v = 10 + (c - 'a');
    if (v < 0 || v >= dims[i]) throw std::invalid_argument("bad digit in label '" + s + "'");
    l[i] = static_cast<std::uint8_t>(v);
  }
  return l;
}

SparseKet::SparseKet(std::vector<int> dims) : dims_(std::move(dims)) { check_dims(dims_); }

SparseKet::SparseKet(std::vector<int> dims, const std::map<Label, Complex>& amps)
    : SparseKet(std::move(dims)) {
  for (const auto& [l, a] : amps) add(l, a);
}

void SparseKet::check_label(const Label& l) const {
  if (l.size() != dims_.size()) throw std::invalid_argument("label length does not match dims");
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] >= dims_[i]) throw std::invalid_argument("label digit exceeds site dimension");
}

void SparseKet::add(const Label& label, Complex amp) {
  check_label(label);
  if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
    throw std::invalid_argument("non-finite amplitude");
  auto [it, fresh] = amps_.try_emplace(label, amp);
  if (!fresh) it->second += amp;
  if (std::abs(it->second) < tol::prune) amps_.erase(it);
}

Complex SparseKet::amplitude(const Label& label) const {
  auto it = amps_.find(label);
  return it == amps_.end() ? Complex{} : it->second;
}

double SparseKet::norm() const {
  double s = 0;
  for (const auto& [l, a] : amps_) s += std::norm(a);
  return std::sqrt(s);
}

SparseKet SparseKet::normalized() const {
  const double n = norm();
  if (n == 0) throw std::domain_error("cannot normalize the zero ket");
  return scaled(1.0 / n);
}

SparseKet SparseKet::scaled(Complex factor) const {
  SparseKet out(dims_);
  for (const auto& [l, a] : amps_) out.add(l, a * factor);
  return out;
}

SparseKet tensor(const SparseKet& a, const SparseKet& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  SparseKet out(dims);
  for (const auto& [la, xa] : a.amplitudes()) {
    for (const auto& [lb, xb] : b.amplitudes()) {
      Label l = la;
      l.insert(l.end(), lb.begin(), lb.end());
      out.add(l, xa * xb);
    }
  }
  return out;
}

SparseKet operator+(const SparseKet& a, const SparseKet& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("adding kets with different dims");
  SparseKet out = a;
  for (const auto& [l, x] : b.amplitudes()) out.add(l, x);
  return out;
}

Complex inner(const SparseKet& a, const SparseKet& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("inner product of kets with different dims");
  Complex s{};
  for (const auto& [l, x] : a.amplitudes()) s += std::conj(x) * b.amplitude(l);
  return s;
}

SparseKet apply_local(const SparseKet& psi, int site, const Eigen::MatrixXcd& u) {
  if (site < 0 || site >= psi.site_count()) throw std::invalid_argument("site out of range");
  const int d = psi.dims()[site];
  if (u.rows() != d || u.cols() != d) throw std::invalid_argument("local operator has wrong size");
  SparseKet out(psi.dims());
  for (const auto& [l, x] : psi.amplitudes()) {
    Label t = l;
    for (int r = 0; r < d; ++r) {
      t[site] = static_cast<std::uint8_t>(r);
      out.add(t, u(r, l[site]) * x);
    }
  }
  return out;
}

SparseKet permute_sites(const SparseKet& psi, std::span<const int> perm) {
  const int n = psi.site_count();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> dims(n);
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n || seen[perm[i]])
      throw std::invalid_argument("not a permutation");
    seen[perm[i]] = true;
    dims[i] = psi.dims()[perm[i]];
  }
  SparseKet out(dims);
  for (const auto& [l, x] : psi.amplitudes()) {
    Label t(n);
    for (int i = 0; i < n; ++i) t[i] = l[perm[i]];
    out.add(t, x);
  }
  return out;
}

std::vector<int> State::system_sites() const {
  std::vector<int> sites;
  for (int i = 0; i < ket.site_count(); ++i)
    if (std::find(environment.begin(), environment.end(), i) == environment.end())
      sites.push_back(i);
  return sites;
}

DensityOperator::DensityOperator(std::vector<int> sites, std::vector<int> dims,
                                 std::vector<Label> support, Eigen::MatrixXcd matrix)
    : sites_(std::move(sites)),
      dims_(std::move(dims)),
      support_(std::move(support)),
      matrix_(std::move(matrix)) {
  check_dims(dims_);
  if (sites_.size() != dims_.size()) throw std::invalid_argument("sites and dims differ in length");
  if (!std::is_sorted(support_.begin(), support_.end()) ||
      std::adjacent_find(support_.begin(), support_.end()) != support_.end())
    throw std::invalid_argument("support must be sorted and distinct");
  const auto n = static_cast<Eigen::Index>(support_.size());
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw std::invalid_argument("matrix size does not match support");
  for (const auto& l : support_) {
    if (l.size() != dims_.size()) throw std::invalid_argument("support label length mismatch");
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i] >= dims_[i]) throw std::invalid_argument("support label digit out of range");
  }
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol::hermitian * scale)
    throw std::invalid_argument("density operator is not Hermitian");
}

Complex DensityOperator::entry(const Label& a, const Label& b) const {
  auto ia = std::lower_bound(support_.begin(), support_.end(), a);
  auto ib = std::lower_bound(support_.begin(), support_.end(), b);
  if (ia == support_.end() || *ia != a || ib == support_.end() || *ib != b) return {};
  return matrix_(ia - support_.begin(), ib - support_.begin());
}

double DensityOperator::trace() const { return matrix_.trace().real(); }

std::size_t DensityOperator::ambient_dimension() const {
  std::size_t d = 1;
  for (int x : dims_) d *= static_cast<std::size_t>(x);
  return d;
}

namespace {

struct LabelHash {
  std::size_t operator()(const Label& l) const {
    std::size_t h = 1469598103934665603ull;
    for (auto c : l) h = (h ^ c) * 1099511628211ull;
    return h;
  }
};

std::vector<int> checked_keep(std::span<const int> keep, int sites) {
  if (keep.empty()) throw std::invalid_argument("reduce needs at least one kept site");
  std::vector<int> k(keep.begin(), keep.end());
  std::sort(k.begin(), k.end());
  if (std::adjacent_find(k.begin(), k.end()) != k.end())
    throw std::invalid_argument("kept sites must be distinct");
  if (k.front() < 0 || k.back() >= sites) throw std::invalid_argument("kept site out of range");
  return k;
}

struct Split {
  Label kept, traced;
};

Split split_label(const Label& l, const std::vector<bool>& is_kept) {
  Split s;
  for (std::size_t i = 0; i < l.size(); ++i) (is_kept[i] ? s.kept : s.traced).push_back(l[i]);
  return s;
}

// Accumulates tr_traced |psi><psi| into `m` (indexed through `index`).
void accumulate(const SparseKet& psi, const std::vector<bool>& is_kept,
                const std::map<Label, Eigen::Index>& index, Eigen::MatrixXcd& m) {
  std::unordered_map<Label, std::vector<std::pair<Eigen::Index, Complex>>, LabelHash> groups;
  for (const auto& [l, a] : psi.amplitudes()) {
    auto s = split_label(l, is_kept);
    groups[s.traced].emplace_back(index.at(s.kept), a);
  }
  for (const auto& [traced, members] : groups)
    for (const auto& [i, ai] : members)
      for (const auto& [j, aj] : members) m(i, j) += ai * std::conj(aj);
}

DensityOperator reduce_terms(std::span<const SparseKet> terms, std::span<const int> keep_in) {
  if (terms.empty()) throw std::invalid_argument("reduce_mixture needs at least one term");
  const auto& dims = terms.front().dims();
  for (const auto& t : terms)
    if (t.dims() != dims) throw std::invalid_argument("mixture terms have different dims");
  const auto keep = checked_keep(keep_in, static_cast<int>(dims.size()));
  std::vector<bool> is_kept(dims.size(), false);
  std::vector<int> kept_dims;
  for (int k : keep) {
    is_kept[k] = true;
    kept_dims.push_back(dims[k]);
  }

  std::map<Label, Eigen::Index> index;
  for (const auto& t : terms)
    for (const auto& [l, a] : t.amplitudes()) index.emplace(split_label(l, is_kept).kept, 0);
  if (index.empty()) throw std::domain_error("cannot reduce the zero state");
  std::vector<Label> support;
  for (auto& [l, i] : index) {
    i = static_cast<Eigen::Index>(support.size());
    support.push_back(l);
  }

  const auto n = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : terms) accumulate(t, is_kept, index, m);
  const double tr = m.trace().real();
  if (tr <= 0) throw std::domain_error("reduced state has zero trace");
  m /= tr;
  m = (0.5 * (m + m.adjoint())).eval();
  return DensityOperator(keep, std::move(kept_dims), std::move(support), std::move(m));
}

}  // namespace

DensityOperator reduce(const SparseKet& psi, std::span<const int> keep) {
  return reduce_terms(std::span<const SparseKet>(&psi, 1), keep);
}

DensityOperator reduce_mixture(std::span<const SparseKet> terms, std::span<const int> keep) {
  return reduce_terms(terms, keep);
}

DensityOperator partial_transpose(const DensityOperator& rho, std::span<const int> transposed) {
  const auto& sites = rho.sites();
  if (transposed.empty()) throw std::invalid_argument("partial transpose needs at least one site");
  std::vector<bool> flip(sites.size(), false);
  std::size_t count = 0;
  for (int s : transposed) {
    auto it = std::find(sites.begin(), sites.end(), s);
    if (it == sites.end()) throw std::invalid_argument("transposed site is not a kept site");
    if (!flip[it - sites.begin()]) ++count;
    flip[it - sites.begin()] = true;
  }
  if (count == sites.size()) throw std::invalid_argument("cannot transpose every kept site");

  const auto& sup = rho.support();
  const auto& m = rho.matrix();
  const auto n = static_cast<Eigen::Index>(sup.size());
  auto exchange = [&](const Label& a, const Label& b) {
    Label x = a, y = b;
    for (std::size_t i = 0; i < flip.size(); ++i)
      if (flip[i]) std::swap(x[i], y[i]);
    return std::pair{x, y};
  };

  std::map<Label, Eigen::Index> index;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (m(i, j) != Complex{}) {
        auto [x, y] = exchange(sup[i], sup[j]);
        index.emplace(std::move(x), 0);
        index.emplace(std::move(y), 0);
      }
  std::vector<Label> support;
  for (auto& [l, i] : index) {
    i = static_cast<Eigen::Index>(support.size());
    support.push_back(l);
  }
  const auto k = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k, k);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (m(i, j) != Complex{}) {
        auto [x, y] = exchange(sup[i], sup[j]);
        out(index.at(x), index.at(y)) = m(i, j);
      }
  return DensityOperator(sites, rho.dims(), std::move(support), std::move(out));
}

std::vector<double> eigenvalues(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigenvalues of a non-square matrix");
  if (h.size() == 0) return {};
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol::hermitian_input * scale)
    throw std::invalid_argument("matrix is not Hermitian");
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const double norm = sym.norm();
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    const double r = (sym * vecs.col(i) - vals(i) * vecs.col(i)).norm();
    if (r > tol::eigen_residual * std::max(norm, 1e-300))
      throw std::runtime_error("eigenpair residual above tolerance");
  }
  return {vals.data(), vals.data() + vals.size()};
}

bool is_diagonal_in_product_basis(const DensityOperator& rho) {
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > tol::diagonal) return false;
  return true;
}

double max_abs_difference(const DensityOperator& a, const DensityOperator& b) {
  if (a.sites() != b.sites() || a.dims() != b.dims())
    throw std::invalid_argument("operators live on different sites");
  std::vector<Label> all = a.support();
  all.insert(all.end(), b.support().begin(), b.support().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  double worst = 0;
  for (const auto& x : all)
    for (const auto& y : all) worst = std::max(worst, std::abs(a.entry(x, y) - b.entry(x, y)));
  return worst;
}

std::size_t dense_index(const Label& l, std::span<const int> dims) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + l[i];
  return idx;
}

Label dense_label(std::size_t index, std::span<const int> dims) {
  Label l(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    l[i] = static_cast<std::uint8_t>(index % dims[i]);
    index /= dims[i];
  }
  return l;
}

Eigen::MatrixXcd to_dense(const DensityOperator& rho) {
  const auto d = static_cast<Eigen::Index>(rho.ambient_dimension());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  std::vector<Eigen::Index> pos;
  for (const auto& l : rho.support())
    pos.push_back(static_cast<Eigen::Index>(dense_index(l, rho.dims())));
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j) out(pos[i], pos[j]) = rho.matrix()(i, j);
  return out;
}

double fidelity(const SparseKet& a, const SparseKet& b) {
  return std::norm(inner(a.normalized(), b.normalized()));
}

double phase_fitted_fidelity(const SparseKet& a, const SparseKet& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("fidelity of kets with different dims");
  const SparseKet na = a.normalized(), nb = b.normalized();
  // F(theta) = |sum_w c_w e^{i w theta}|^2, w = digit sum of the label.
  std::map<int, Complex> by_weight;
  for (const auto& [l, x] : na.amplitudes()) {
    int w = 0;
    for (auto digit : l) w += digit;
    by_weight[w] += std::conj(x) * nb.amplitude(l);
  }
  auto f = [&](double theta) {
    Complex s{};
    for (const auto& [w, c] : by_weight) s += c * std::polar(1.0, w * theta);
    return std::norm(s);
  };
  constexpr int kGrid = 4096;
  const double step = 2 * std::numbers::pi / kGrid;
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i < kGrid; ++i) samples.emplace_back(f(i * step), i * step);
  std::partial_sort(samples.begin(), samples.begin() + 8, samples.end(),
                    [](const auto& x, const auto& y) { return x.first > y.first; });
  double best = samples.front().first;
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (int c = 0; c < 8; ++c) {
    double lo = samples[c].second - step, hi = samples[c].second + step;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
      if (f1 < f2) {
        lo = x1, x1 = x2, f1 = f2, x2 = lo + phi * (hi - lo), f2 = f(x2);
      } else {
        hi = x2, x2 = x1, f2 = f1, x1 = hi - phi * (hi - lo), f1 = f(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

}  // namespace mres
