#pragma once

// State constructors: GHZ/W, the |E_m> blocks and the states assembled from
// them, Majorana constellations, Dicke states and the psi(N, m) family.

#include <vector>

#include "mres/qstate.hpp"

namespace mres {

SparseKet ghz(int n);
SparseKet w3();

/// (m+1)|0...0> + |1...1> on `size` qubits, unnormalized.
SparseKet e_block(int m, int size);

/// One unnormalized term per (n-m)-subset g_i (lexicographic order): the
/// |E_m> block on g_i, |0> on the other qubits, and environment digit i on
/// an extra last site. The environment has dimension max(2, C(n, n-m)).
std::vector<SparseKet> mixed_from_polynomial(int n, int m);

/// Sums the terms into one normalized purification whose last site is the
/// environment.
State mixture_state(const std::vector<SparseKet>& terms);

/// Sum over (n-m)-subsets of |E_m> on the subset, |0> elsewhere; normalized.
SparseKet pure_ansatz(int n, int m);

struct Star {
  double theta = 0;  // polar angle, 0 = north pole
  double phi = 0;
};

struct Constellation {
  std::vector<Star> stars;
};

/// Symmetrized product of the star spinors cos(t/2)|0> + e^{ip} sin(t/2)|1>,
/// normalized. At most 10 stars.
SparseKet majorana_state(const Constellation& c);

/// Uniform superposition of labels with m zeros and n-m ones.
SparseKet dicke(int n, int m);

/// (sqrt(C(n,m)) |0...0> - (-1)^{n+m} D(n,m)) / sqrt(1 + C(n,m)).
SparseKet psi_family(int n, int m);

/// m stars on the north pole, the other n-m spread evenly on the equator
/// starting at phi = 0.
Constellation pole_equator_constellation(int n, int m);

/// The (n, 1) pole/equator constellation with `lifted` of its equatorial
/// stars moved to polar angle theta. The lifted stars are evenly spaced
/// among the equatorial ones, starting with the one at phi = 0.
Constellation lifted_constellation(int n, int lifted, double theta);

}  // namespace mres
