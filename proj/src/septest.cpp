#include "mres/septest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mres {

namespace {

// Minimum eigenvalue of a Hermitian matrix, computed block by block over the
// connected components of its nonzero pattern.
double block_min_eigenvalue(const Eigen::MatrixXcd& h) {
  const auto n = h.rows();
  std::vector<Eigen::Index> comp(n, -1);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    std::vector<Eigen::Index> members{root};
    comp[root] = root;
    for (std::size_t q = 0; q < members.size(); ++q)
      for (Eigen::Index j = 0; j < n; ++j)
        if (comp[j] < 0 && (h(members[q], j) != Complex{} || h(j, members[q]) != Complex{})) {
          comp[j] = root;
          members.push_back(j);
        }
    std::sort(members.begin(), members.end());
    const auto m = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXcd block(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) block(a, b) = h(members[a], members[b]);
    best = std::min(best, eigenvalues(block).front());
  }
  return best;
}

struct ProductSpace {
  std::vector<int> dims;
  std::size_t total = 1;
  std::vector<std::vector<int>> digits;  // digits[i][k] of dense index i

  explicit ProductSpace(std::vector<int> d) : dims(std::move(d)) {
    for (int x : dims) total *= static_cast<std::size_t>(x);
    digits.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      const Label l = dense_label(i, dims);
      digits[i].assign(l.begin(), l.end());
    }
  }

  Eigen::VectorXcd kron(const std::vector<Eigen::VectorXcd>& f) const {
    Eigen::VectorXcd v(total);
    for (std::size_t i = 0; i < total; ++i) {
      Complex x = 1;
      for (std::size_t k = 0; k < dims.size(); ++k) x *= f[k](digits[i][k]);
      v(static_cast<Eigen::Index>(i)) = x;
    }
    return v;
  }
};

struct Atom {
  std::vector<Eigen::VectorXcd> factors;
  Eigen::VectorXcd full;
};

// Maximizes <v|r|v> over unit product vectors by alternating top-eigenvector
// updates, keeping the best of several starts.
class ProductMaximizer {
 public:
  ProductMaximizer(const ProductSpace& space, const ToleranceConfig& cfg, std::mt19937_64& rng)
      : space_(space), cfg_(cfg), rng_(rng) {}

  std::pair<double, Atom> run(const Eigen::MatrixXcd& r) {
    double best = -std::numeric_limits<double>::infinity();
    Atom best_atom;
    for (int start = 0; start <= cfg_.restarts; ++start) {
      auto f = start == 0 ? basis_start(r) : random_start();
      const double val = climb(r, f);
      if (val > best) {
        best = val;
        best_atom.factors = f;
      }
    }
    best_atom.full = space_.kron(best_atom.factors);
    return {best, std::move(best_atom)};
  }

 private:
  std::vector<Eigen::VectorXcd> basis_start(const Eigen::MatrixXcd& r) {
    Eigen::Index top = 0;
    r.diagonal().real().maxCoeff(&top);
    std::vector<Eigen::VectorXcd> f;
    for (std::size_t k = 0; k < space_.dims.size(); ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space_.dims[k]);
      v(space_.digits[top][k]) = 1;
      f.push_back(v);
    }
    return f;
  }

  std::vector<Eigen::VectorXcd> random_start() {
    std::normal_distribution<double> g;
    std::vector<Eigen::VectorXcd> f;
    for (int d : space_.dims) {
      Eigen::VectorXcd v(d);
      for (int a = 0; a < d; ++a) v(a) = Complex(g(rng_), g(rng_));
      f.push_back(v.normalized());
    }
    return f;
  }

  double climb(const Eigen::MatrixXcd& r, std::vector<Eigen::VectorXcd>& f) {
    const std::size_t sites = space_.dims.size();
    const auto total = static_cast<Eigen::Index>(space_.total);
    double value = -std::numeric_limits<double>::infinity();
    Eigen::VectorXcd others(total);
    for (int sweep = 0; sweep < cfg_.sweeps; ++sweep) {
      const double before = value;
      for (std::size_t k = 0; k < sites; ++k) {
        const int d = space_.dims[k];
        for (Eigen::Index i = 0; i < total; ++i) {
          Complex x = 1;
          for (std::size_t l = 0; l < sites; ++l)
            if (l != k) x *= f[l](space_.digits[i][l]);
          others(i) = x;
        }
        // Local operator on site k: the other factors contracted into r.
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        for (Eigen::Index j = 0; j < total; ++j) {
          const Complex oj = others(j);
          if (oj == Complex(0)) continue;
          const int b = space_.digits[j][k];
          for (Eigen::Index i = 0; i < total; ++i)
            m(space_.digits[i][k], b) += std::conj(others(i)) * r(i, j) * oj;
        }
        m = (0.5 * (m + m.adjoint())).eval();
        value = top_eigenpair(m, f[k]);
      }
      if (value - before <= 1e-12) break;
    }
    return value;
  }

  // Largest eigenvalue and its unit eigenvector; closed form for qubits.
  double top_eigenpair(const Eigen::MatrixXcd& m, Eigen::VectorXcd& v) {
    if (m.rows() == 2) {
      const double a = m(0, 0).real(), d = m(1, 1).real();
      const Complex c = m(0, 1);
      const double top = 0.5 * (a + d) + std::hypot(0.5 * (a - d), std::abs(c));
      Eigen::Vector2cd x(c, top - a), y(top - d, std::conj(c));
      const Eigen::Vector2cd& pick = x.squaredNorm() >= y.squaredNorm() ? x : y;
      if (pick.squaredNorm() == 0) v = Eigen::Vector2cd(a >= d ? 1 : 0, a >= d ? 0 : 1);
      else v = pick.normalized();
      return top;
    }
    solver_.compute(m);
    const auto d = m.rows();
    v = solver_.eigenvectors().col(d - 1);
    return solver_.eigenvalues()(d - 1);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver_;
  const ProductSpace& space_;
  const ToleranceConfig& cfg_;
  std::mt19937_64& rng_;
};

Eigen::MatrixXcd mixture(const std::vector<Atom>& atoms, const Eigen::VectorXd& w,
                         Eigen::Index dim) {
  Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    omega.noalias() += w(static_cast<Eigen::Index>(i)) * atoms[i].full * atoms[i].full.adjoint();
  return omega;
}

constexpr double kZeroWeight = 1e-15;

// Active atoms with their Gram matrix g(i, j) = |<a_i|a_j>|^2 and overlaps
// b(i) = <a_i|rho|a_i>, kept up to date as atoms come and go.
struct ActiveSet {
  std::vector<Atom> atoms;
  Eigen::VectorXd w, b;
  Eigen::MatrixXd g;

  void add(Atom a, double weight, const Eigen::MatrixXcd& rho) {
    const auto n = static_cast<Eigen::Index>(atoms.size());
    g.conservativeResize(n + 1, n + 1);
    for (Eigen::Index i = 0; i < n; ++i) g(i, n) = g(n, i) = std::norm(atoms[i].full.dot(a.full));
    g(n, n) = std::norm(a.full.squaredNorm());
    b.conservativeResize(n + 1);
    b(n) = a.full.dot(rho * a.full).real();
    w.conservativeResize(n + 1);
    w(n) = weight;
    atoms.push_back(std::move(a));
  }

  // Projected gradient on ||rho - sum w_i P_i||^2 over the simplex, warm
  // started from the current weights; atoms whose weight reaches zero go.
  double objective(const Eigen::VectorXd& x) const { return x.dot(g * x) - 2 * b.dot(x); }

  // Exact minimizer of w'Gw - 2b'w over the simplex restricted to the
  // current atoms, by an active-set method warm started from w (which must
  // be feasible). The support stays affinely independent, so it never
  // exceeds dim^2 + 1 atoms.
  void reweight() {
    const auto n = static_cast<Eigen::Index>(atoms.size());
    std::vector<char> passive(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) passive[i] = w(i) > 0;
    for (int guard = 0; guard < 4 * n + 100; ++guard) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index i = 0; i < n; ++i)
        if (passive[i]) idx.push_back(i);
      const auto m = static_cast<Eigen::Index>(idx.size());
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
      Eigen::VectorXd rhs(m + 1);
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) kkt(i, j) = g(idx[i], idx[j]);
        kkt(i, m) = kkt(m, i) = 1;
        rhs(i) = b(idx[i]);
      }
      rhs(m) = 1;
      const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      double alpha = 1;
      Eigen::Index blocking = -1;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double cur = w(idx[i]), next = sol(i);
        if (next < kZeroWeight && cur - next > 0) {
          const double a = cur / (cur - next);
          if (a < alpha) alpha = a, blocking = idx[i];
        }
      }
      Eigen::VectorXd moved = w;
      for (Eigen::Index i = 0; i < m; ++i) moved(idx[i]) = w(idx[i]) + alpha * (sol(i) - w(idx[i]));
      if (objective(moved) <= objective(w) + 1e-15) w = moved;
      if (blocking >= 0) {
        w(blocking) = 0;
        for (Eigen::Index i : idx)
          if (w(i) <= kZeroWeight) w(i) = 0, passive[i] = 0;
        w /= w.sum();
        continue;
      }
      // Optimal on the support; bring in the atom that most wants weight.
      const Eigen::VectorXd grad = g * w - b;
      double nu = 0;
      for (Eigen::Index i : idx) nu += grad(i);
      nu /= static_cast<double>(m);
      Eigen::Index enter = -1;
      double worst = -1e-13;
      for (Eigen::Index i = 0; i < n; ++i)
        if (!passive[i] && grad(i) - nu < worst) worst = grad(i) - nu, enter = i;
      if (enter < 0) break;
      passive[enter] = 1;
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < n; ++i)
      if (w(i) > 0) keep.push_back(i);
    if (static_cast<Eigen::Index>(keep.size()) == n) return;
    const auto m = static_cast<Eigen::Index>(keep.size());
    std::vector<Atom> kept;
    Eigen::VectorXd kw(m), kb(m);
    Eigen::MatrixXd kg(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      kept.push_back(std::move(atoms[keep[i]]));
      kw(i) = w(keep[i]);
      kb(i) = b(keep[i]);
      for (Eigen::Index j = 0; j < m; ++j) kg(i, j) = g(keep[i], keep[j]);
    }
    atoms = std::move(kept);
    w = kw;
    b = kb;
    g = kg;
  }
};

std::vector<ProductTerm> to_terms(const std::vector<Atom>& atoms, const Eigen::VectorXd& w) {
  std::vector<ProductTerm> out;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    out.push_back({w(static_cast<Eigen::Index>(i)), atoms[i].factors});
  return out;
}

std::vector<ProductTerm> diagonal_terms(const DensityOperator& rho) {
  std::vector<ProductTerm> out;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double p = rho.matrix()(i, i).real();
    if (p <= 0) continue;
    ProductTerm t{p, {}};
    for (std::size_t k = 0; k < rho.dims().size(); ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rho.dims()[k]);
      v(rho.support()[i][k]) = 1;
      t.factors.push_back(v);
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

double ppt_min_eig(const DensityOperator& rho, std::span<const int> transposed) {
  return block_min_eigenvalue(partial_transpose(rho, transposed).matrix());
}

double reconstruction_distance(const DensityOperator& rho,
                               const std::vector<ProductTerm>& decomposition) {
  if (rho.ambient_dimension() <= 4096) {
    const ProductSpace space(rho.dims());
    Eigen::MatrixXcd diff = to_dense(rho);
    for (const auto& t : decomposition) {
      const Eigen::VectorXcd v = space.kron(t.factors);
      diff.noalias() -= t.weight * v * v.adjoint();
    }
    return diff.norm();
  }
  // Too large for a dense matrix: expand the squared norm with overlaps.
  const auto& sup = rho.support();
  const auto& m = rho.matrix();
  double sq = m.squaredNorm();
  for (std::size_t i = 0; i < decomposition.size(); ++i) {
    const auto& ti = decomposition[i];
    Eigen::VectorXcd on_support(static_cast<Eigen::Index>(sup.size()));
    for (std::size_t a = 0; a < sup.size(); ++a) {
      Complex x = 1;
      for (std::size_t k = 0; k < ti.factors.size(); ++k) x *= ti.factors[k](sup[a][k]);
      on_support(static_cast<Eigen::Index>(a)) = x;
    }
    sq -= 2 * ti.weight * on_support.dot(m * on_support).real();
    for (const auto& tj : decomposition) {
      double overlap = 1;
      for (std::size_t k = 0; k < ti.factors.size(); ++k) overlap *= std::norm(ti.factors[k].dot(tj.factors[k]));
      sq += ti.weight * tj.weight * overlap;
    }
  }
  return std::sqrt(std::max(sq, 0.0));
}

GilbertResult gilbert_nearest_separable(const DensityOperator& rho, const ToleranceConfig& cfg) {
  if (rho.ambient_dimension() > 256)
    throw std::invalid_argument("separable search limited to 256-dimensional operators");
  const ProductSpace space(rho.dims());
  const auto dim = static_cast<Eigen::Index>(space.total);
  const Eigen::MatrixXcd target = to_dense(rho) / rho.trace();
  std::mt19937_64 rng(cfg.seed);
  ProductMaximizer maximizer(space, cfg, rng);

  // Start from the dephased state: a mixture of product basis projectors.
  ActiveSet set;
  double total = 0;
  for (Eigen::Index i = 0; i < dim; ++i) total += std::max(0.0, target(i, i).real());
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double p = target(i, i).real();
    if (p <= 0) continue;
    Atom a;
    for (std::size_t k = 0; k < space.dims.size(); ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dims[k]);
      v(space.digits[i][k]) = 1;
      a.factors.push_back(v);
    }
    a.full = space.kron(a.factors);
    set.add(std::move(a), p / total, target);
  }

  GilbertResult res;
  // Half the separability tolerance leaves head-room for the final check.
  const double goal = 0.5 * cfg.sep_tol;
  Eigen::MatrixXcd omega = mixture(set.atoms, set.w, dim);
  double dist = (target - omega).norm();
  res.history.push_back(dist);
  for (int it = 0; it < cfg.gilbert_max_iters && dist > goal; ++it) {
    const Eigen::MatrixXcd r = target - omega;
    auto [value, atom] = maximizer.run(r);
    const Eigen::MatrixXcd p = atom.full * atom.full.adjoint();
    const Eigen::MatrixXcd step_dir = p - omega;
    const double gap = (r.adjoint() * step_dir).trace().real();
    const double denom = step_dir.squaredNorm();
    if (gap <= 1e-16 || denom <= 0) break;
    const double lambda = std::clamp(gap / denom, 0.0, 1.0);
    set.w *= 1 - lambda;
    set.add(std::move(atom), lambda, target);
    set.reweight();
    omega = mixture(set.atoms, set.w, dim);
    // Reweighting starts from the line-search point and only descends.
    dist = (target - omega).norm();
    ++res.iterations;
    res.history.push_back(dist);
    // Stalled: under 1% progress over the last 200 steps.
    if (it >= 200 && dist > 0.99 * res.history[res.history.size() - 201]) break;
  }
  res.decomposition = to_terms(set.atoms, set.w);
  res.distance = reconstruction_distance(rho, res.decomposition);
  return res;
}

namespace {
constexpr int kWitnessIters = 300;
}  // namespace

Verdict full_verdict(const DensityOperator& rho, const ToleranceConfig& cfg) {
  const auto& sites = rho.sites();
  const std::size_t k = sites.size();

  if (k == 1) {
    Eigen::MatrixXcd dense = to_dense(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    Separable s;
    for (Eigen::Index i = 0; i < dense.rows(); ++i) {
      const double p = es.eigenvalues()(i);
      if (p > tol::prune) s.decomposition.push_back({p, {es.eigenvectors().col(i)}});
    }
    s.reconstruction_error = reconstruction_distance(rho, s.decomposition);
    return s;
  }

  if (is_diagonal_in_product_basis(rho)) {
    // The mixture reproduces the diagonal exactly; what is left over is the
    // (negligible) off-diagonal part.
    Eigen::MatrixXcd off = rho.matrix();
    off.diagonal().setZero();
    return Separable{diagonal_terms(rho), off.norm()};
  }

  double min_pt = std::numeric_limits<double>::infinity();
  auto try_pt = [&](std::vector<int> part) -> std::optional<Entangled> {
    const double e = ppt_min_eig(rho, part);
    min_pt = std::min(min_pt, e);
    if (e <= -cfg.ppt_tol) return Entangled{std::move(part), e};
    return std::nullopt;
  };
  // A transpose and its complement share a spectrum, so with two sites one
  // check covers both.
  for (std::size_t i = 0; i < (k == 2 ? 1 : k); ++i)
    if (auto e = try_pt({sites[i]})) return *e;
  for (std::size_t size = 2; size <= k / 2; ++size) {
    std::vector<bool> pick(k, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      if (2 * size == k && !pick[0]) continue;
      std::vector<int> part;
      for (std::size_t i = 0; i < k; ++i)
        if (pick[i]) part.push_back(sites[i]);
      if (auto e = try_pt(std::move(part))) return *e;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }

  const std::size_t dim = rho.ambient_dimension();
  if (dim > 256) return Inconclusive{min_pt, std::numeric_limits<double>::infinity()};
  // PPT is sufficient for 2x2 and 2x3 systems; the search only supplies the
  // witness, so it gets a short budget (states on the PPT boundary converge
  // very slowly).
  if (k == 2 && dim <= 6) {
    ToleranceConfig witness = cfg;
    witness.gilbert_max_iters = std::min(cfg.gilbert_max_iters, kWitnessIters);
    auto g = gilbert_nearest_separable(rho, witness);
    return Separable{std::move(g.decomposition), g.distance};
  }
  auto g = gilbert_nearest_separable(rho, cfg);
  if (g.distance <= cfg.sep_tol) return Separable{std::move(g.decomposition), g.distance};
  return Inconclusive{min_pt, g.distance};
}

}  // namespace mres
