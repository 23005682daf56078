#pragma once

// Brute-force reference implementations over the full product space. Only
// usable for small systems; the tests compare the sparse code against these.

#include <random>
#include <vector>

#include "mres/qstate.hpp"

namespace oracle {

inline Eigen::VectorXcd dense_vector(const mres::SparseKet& psi) {
  std::size_t total = 1;
  for (int d : psi.dims()) total *= d;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total));
  for (const auto& [l, a] : psi.amplitudes())
    v(static_cast<Eigen::Index>(mres::dense_index(l, psi.dims()))) = a;
  return v;
}

// Full |psi><psi| then an explicit sum over the traced indices.
inline Eigen::MatrixXcd dense_reduce(const mres::SparseKet& psi, const std::vector<int>& keep) {
  const auto& dims = psi.dims();
  const int n = psi.site_count();
  const Eigen::VectorXcd v = dense_vector(psi);
  const Eigen::MatrixXcd full = v * v.adjoint();
  std::vector<int> kept_dims;
  std::vector<bool> is_kept(n, false);
  for (int k : keep) {
    kept_dims.push_back(dims[k]);
    is_kept[k] = true;
  }
  std::size_t kd = 1;
  for (int d : kept_dims) kd *= d;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  const auto total = v.size();
  for (Eigen::Index i = 0; i < total; ++i) {
    const auto li = mres::dense_label(static_cast<std::size_t>(i), dims);
    for (Eigen::Index j = 0; j < total; ++j) {
      if (full(i, j) == mres::Complex{}) continue;
      const auto lj = mres::dense_label(static_cast<std::size_t>(j), dims);
      bool agree = true;
      mres::Label ki, kj;
      for (int s = 0; s < n; ++s) {
        if (is_kept[s]) {
          ki.push_back(li[s]);
          kj.push_back(lj[s]);
        } else if (li[s] != lj[s]) {
          agree = false;
          break;
        }
      }
      if (!agree) continue;
      out(static_cast<Eigen::Index>(mres::dense_index(ki, kept_dims)),
          static_cast<Eigen::Index>(mres::dense_index(kj, kept_dims))) += full(i, j);
    }
  }
  return out / out.trace().real();
}

// Dense partial transpose on kept-site positions `flip` (0-based among dims).
inline Eigen::MatrixXcd dense_partial_transpose(const Eigen::MatrixXcd& m, const std::vector<int>& dims,
                                                const std::vector<int>& flip) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      auto a = mres::dense_label(static_cast<std::size_t>(i), dims);
      auto b = mres::dense_label(static_cast<std::size_t>(j), dims);
      for (int f : flip) std::swap(a[f], b[f]);
      out(static_cast<Eigen::Index>(mres::dense_index(a, dims)),
          static_cast<Eigen::Index>(mres::dense_index(b, dims))) = m(i, j);
    }
  return out;
}

inline mres::SparseKet random_ket(std::mt19937_64& rng, const std::vector<int>& dims, double density = 1.0) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  mres::SparseKet psi(dims);
  std::size_t total = 1;
  for (int d : dims) total *= d;
  for (std::size_t i = 0; i < total; ++i)
    if (u(rng) < density) psi.add(mres::dense_label(i, dims), mres::Complex(g(rng), g(rng)));
  if (psi.term_count() == 0) psi.add(mres::Label(dims.size(), 0), 1.0);
  return psi.normalized();
}

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = mres::Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ();
}

}  // namespace oracle
