#pragma once

// Braid words on s strands. Letter +i is the Artin generator sigma_i (the
// strand at position i passes over the one at i+1, positions 1-based), -i
// its inverse. Strands are numbered by their starting position, from 0.

#include <string>
#include <vector>

#include "mres/linkpoly.hpp"

namespace mres {

struct BraidWord {
  int strands = 0;
  std::vector<int> word;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// Checks strand count >= 1 and every letter in [-(s-1), s-1] \ {0}.
void check_braid(const BraidWord& b);

/// Cancels adjacent sigma_i sigma_i^{-1} pairs until none remain.
BraidWord free_reduce(const BraidWord& b);

BraidWord inverse(const BraidWord& b);

/// Removes the listed strands; the crossings they took part in disappear
/// and the remaining generators are renumbered. Not reduced.
BraidWord delete_strands(const BraidWord& b, const std::vector<int>& strands);

/// end[p] = strand found at position p after the whole word.
std::vector<int> braid_permutation(const BraidWord& b);
bool is_pure(const BraidWord& b);

/// Half the signed crossing count per strand pair. Throws
/// std::invalid_argument for a braid that is not pure.
std::vector<std::vector<int>> linking_matrix(const BraidWord& b);

/// The word does not reduce freely to the empty word, deleting any single
/// strand does, and (from three strands on, where pairs are proper
/// sublinks) every linking number is zero.
bool validate_brunnian(const BraidWord& b);

/// n = 2: sigma_1^2. n = 3: (sigma_1 sigma_2^-1)^3. n >= 4: the commutator
/// B sigma_{n-1}^2 B^-1 sigma_{n-1}^-2 with B the (n-1)-strand block.
BraidWord brunnian_block(int n);

/// One Brunnian block per monomial, ascending by mask, each conjugated onto
/// the strands the monomial names.
BraidWord compose_blocks(const LinkPolynomial& p);

/// "s:3 w:1 -2 1 -2 1 -2".
std::string braid_to_string(const BraidWord& b);
BraidWord parse_braid(const std::string& text);

struct Crossing {
  int step = 0;      // index into the word
  int position = 0;  // left position, 0-based
  int sign = 0;
  int over = 0, under = 0;  // strand numbers
};

struct LinkDiagram {
  int strands = 0;
  std::vector<std::string> colors;  // per strand
  std::vector<Crossing> crossings;
  std::vector<std::vector<int>> occupant;  // occupant[step][pos]: strand at pos before step
  double width = 0, height = 0;
};

/// Strand colours: red, green, blue, yellow, magenta, cyan, orange, purple.
LinkDiagram build_diagram(const BraidWord& b);

/// Vertical braid drawn top to bottom on a fixed grid, closed by nested
/// arcs on the right. At most 8 strands.
std::string render_svg(const LinkDiagram& d);
std::string render_svg(const BraidWord& b);

}  // namespace mres
