#pragma once

// Separability verdicts for density operators: diagonal shortcut, partial
// transpose (PPT) witnesses, and a Gilbert / Frank-Wolfe search for the
// nearest fully separable state.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mres/qstate.hpp"

namespace mres {

struct ToleranceConfig {
  double ppt_tol = 1e-9;
  double sep_tol = 1e-6;
  int gilbert_max_iters = 5000;
  int restarts = 20;
  int sweeps = 100;
  std::uint64_t seed = 0;
};

/// weight * |f_1><f_1| x ... x |f_n><f_n|, each factor a unit vector.
struct ProductTerm {
  double weight = 0;
  std::vector<Eigen::VectorXcd> factors;
};

struct Separable {
  std::vector<ProductTerm> decomposition;
  double reconstruction_error = 0;
};

struct Entangled {
  std::vector<int> transposed;  // original site indices
  double min_eig = 0;
};

struct Inconclusive {
  double min_pt_eigenvalue = 0;
  double best_separable_distance = 0;
};

using Verdict = std::variant<Separable, Entangled, Inconclusive>;

/// Smallest eigenvalue of the partial transpose. The transposed matrix is
/// split into its connected blocks before diagonalizing.
double ppt_min_eig(const DensityOperator& rho, std::span<const int> transposed);

struct GilbertResult {
  double distance = 0;
  std::vector<ProductTerm> decomposition;
  std::vector<double> history;  // distance after each iteration, starting point first
  int iterations = 0;
};

/// Requires the product of kept dimensions to be at most 256.
GilbertResult gilbert_nearest_separable(const DensityOperator& rho, const ToleranceConfig& cfg);

/// Frobenius norm of rho minus the mixture.
double reconstruction_distance(const DensityOperator& rho,
                               const std::vector<ProductTerm>& decomposition);

Verdict full_verdict(const DensityOperator& rho, const ToleranceConfig& cfg);

inline bool is_separable(const Verdict& v) { return std::holds_alternative<Separable>(v); }
inline bool is_entangled(const Verdict& v) { return std::holds_alternative<Entangled>(v); }
inline bool is_inconclusive(const Verdict& v) { return std::holds_alternative<Inconclusive>(v); }

}  // namespace mres
