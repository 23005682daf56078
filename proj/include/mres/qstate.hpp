#pragma once

// Sparse pure states and density operators over an explicit support basis.
//
// Reduced states are never built over the full product space: a reduction
// only touches the product-basis labels that carry amplitude, so an
// eight-qudit ket with 49 terms costs 49^2 operations no matter how large
// d^N is.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mres {

using Complex = std::complex<double>;
/// One digit per site, digit < site dimension.
using Label = std::vector<std::uint8_t>;

namespace tol {
inline constexpr double prune = 1e-15;
inline constexpr double hermitian = 1e-12;
inline constexpr double hermitian_input = 1e-10;
inline constexpr double eigen_residual = 1e-9;
inline constexpr double diagonal = 1e-12;
}  // namespace tol

/// Per-site dimensions, all >= 2.
void check_dims(std::span<const int> dims);

/// Digits 0-9 then a-z (dimensions up to 36).
std::string label_to_string(const Label& l);
Label label_from_string(const std::string& s, std::span<const int> dims);

class SparseKet {
 public:
  SparseKet() = default;
  explicit SparseKet(std::vector<int> dims);
  SparseKet(std::vector<int> dims, const std::map<Label, Complex>& amps);

  const std::vector<int>& dims() const { return dims_; }
  int site_count() const { return static_cast<int>(dims_.size()); }
  const std::map<Label, Complex>& amplitudes() const { return amps_; }
  std::size_t term_count() const { return amps_.size(); }

  /// Accumulates into the amplitude of `label`; drops it if it cancels.
  void add(const Label& label, Complex amp);
  Complex amplitude(const Label& label) const;

  double norm() const;
  SparseKet normalized() const;
  SparseKet scaled(Complex factor) const;

 private:
  void check_label(const Label& l) const;

  std::vector<int> dims_;
  std::map<Label, Complex> amps_;
};

/// Tensor product; sites of `b` follow those of `a`.
SparseKet tensor(const SparseKet& a, const SparseKet& b);
SparseKet operator+(const SparseKet& a, const SparseKet& b);
Complex inner(const SparseKet& a, const SparseKet& b);

/// Applies a d x d unitary (or any matrix) to one site.
SparseKet apply_local(const SparseKet& psi, int site, const Eigen::MatrixXcd& u);

/// Site `i` of the result is site `perm[i]` of the input.
SparseKet permute_sites(const SparseKet& psi, std::span<const int> perm);

/// A pure ket together with sites that are always traced out. A mixed state
/// is given by its purification: the environment sites carry the mixing.
struct State {
  SparseKet ket;
  std::vector<int> environment;

  /// Site indices not in the environment, ascending.
  std::vector<int> system_sites() const;
};

/// Hermitian operator over the span of `support`, a sorted list of distinct
/// labels on the kept sites. Also used for partial transposes, which are
/// Hermitian but not necessarily positive.
class DensityOperator {
 public:
  DensityOperator(std::vector<int> sites, std::vector<int> dims, std::vector<Label> support,
                  Eigen::MatrixXcd matrix);

  /// Original site indices of the kept sites, ascending.
  const std::vector<int>& sites() const { return sites_; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<Label>& support() const { return support_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  std::size_t size() const { return support_.size(); }

  /// Entry for two labels; zero when either is outside the support.
  Complex entry(const Label& a, const Label& b) const;
  double trace() const;
  /// Product of kept-site dimensions.
  std::size_t ambient_dimension() const;

 private:
  std::vector<int> sites_;
  std::vector<int> dims_;
  std::vector<Label> support_;
  Eigen::MatrixXcd matrix_;
};

/// Partial trace onto `keep` (site indices of psi), unit trace.
DensityOperator reduce(const SparseKet& psi, std::span<const int> keep);

/// Reduction of sum_i |t_i><t_i| onto `keep`, unit trace. Terms share dims.
DensityOperator reduce_mixture(std::span<const SparseKet> terms, std::span<const int> keep);

/// Transposes the listed sites (original indices, non-empty strict subset
/// of rho.sites()). The support is closed under the digit exchange first.
DensityOperator partial_transpose(const DensityOperator& rho, std::span<const int> transposed);

/// Ascending eigenvalues of a Hermitian matrix. Throws std::invalid_argument
/// on non-Hermitian input.
std::vector<double> eigenvalues(const Eigen::MatrixXcd& h);

bool is_diagonal_in_product_basis(const DensityOperator& rho);

/// Max |entry| difference over the union of both supports.
double max_abs_difference(const DensityOperator& a, const DensityOperator& b);

/// Dense matrix over the full product space of the kept sites, first site
/// most significant.
Eigen::MatrixXcd to_dense(const DensityOperator& rho);
std::size_t dense_index(const Label& l, std::span<const int> dims);
Label dense_label(std::size_t index, std::span<const int> dims);

/// |<a|b>|^2 for normalized copies.
double fidelity(const SparseKet& a, const SparseKet& b);

/// Fidelity maximized over a common diagonal phase on every site
/// (|j> -> e^{i j theta}|j>). Global phase drops out of fidelity anyway.
double phase_fitted_fidelity(const SparseKet& a, const SparseKet& b);

}  // namespace mres
