#pragma once

// m-resistance: a state is m-resistant when tracing out any m subsystems
// leaves an entangled state and tracing out any m+1 leaves a fully
// separable one.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mres/builders.hpp"
#include "mres/linkpoly.hpp"
#include "mres/septest.hpp"

namespace mres {

struct SubsetVerdict {
  std::vector<int> traced;  // site indices of the state
  Verdict verdict;
  bool implied = false;  // Entangled because a smaller kept set already was
};

struct ResistanceProfile {
  int site_count = 0;  // system sites, environment excluded
  bool symmetric = false;
  std::map<int, std::vector<SubsetVerdict>> levels;  // keyed by traced count
};

/// Verdicts for every traced size 1..N-2, largest first. With `symmetric`
/// only the traced set {s_0..s_{t-1}} is tested per size. With
/// `use_implied`, a kept set containing an entangled kept set is marked
/// Entangled without a test.
ResistanceProfile resistance_profile(const State& state, bool symmetric,
                                     const ToleranceConfig& cfg, unsigned threads = 1,
                                     bool use_implied = true);

struct ClassifyResult {
  std::optional<int> m;
  std::string reason;  // set when m is empty
  ResistanceProfile profile;  // the levels that were examined
};

/// Walks traced sizes from N-2 down. A level where every verdict is
/// Separable passes; the first level where every verdict is Entangled gives
/// m. Inconclusive verdicts or a mixed level give no m.
ClassifyResult classify(const State& state, const ToleranceConfig& cfg, bool symmetric = false,
                        unsigned threads = 1);

/// One monomial per entangled kept set of two or more sites, canonicalized.
/// Ring i is the i-th system site. Throws std::runtime_error naming the
/// subset if a verdict is inconclusive.
LinkPolynomial state_to_link_polynomial(const State& state, const ToleranceConfig& cfg,
                                        unsigned threads = 1);

struct ScanPoint {
  double theta = 0;
  ClassifyResult result;
};

/// theta = 0, pi/40, ..., pi/2.
std::vector<double> default_scan_grid();

/// Classifies the Majorana state of lifted_constellation(n, lifted, theta)
/// for every theta (symmetric mode).
std::vector<ScanPoint> constellation_scan(int n, int lifted, std::span<const double> thetas,
                                          const ToleranceConfig& cfg, unsigned threads = 1);

/// Seed for the verdict on one traced set, derived from the root seed.
std::uint64_t subset_seed(std::uint64_t root, std::span<const int> traced);

}  // namespace mres
