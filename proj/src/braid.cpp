#include "mres/braid.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mres {

void check_braid(const BraidWord& b) {
  if (b.strands < 1) throw std::invalid_argument("braid needs at least one strand");
  for (int g : b.word)
    if (g == 0 || std::abs(g) >= b.strands)
      throw std::invalid_argument("generator " + std::to_string(g) + " out of range for " +
                                  std::to_string(b.strands) + " strands");
}

BraidWord free_reduce(const BraidWord& b) {
  check_braid(b);
  std::vector<int> out;
  for (int g : b.word) {
    if (!out.empty() && out.back() == -g) out.pop_back();
    else out.push_back(g);
  }
  return {b.strands, std::move(out)};
}

BraidWord inverse(const BraidWord& b) {
  BraidWord r{b.strands, {}};
  for (auto it = b.word.rbegin(); it != b.word.rend(); ++it) r.word.push_back(-*it);
  return r;
}

BraidWord delete_strands(const BraidWord& b, const std::vector<int>& strands) {
  check_braid(b);
  std::vector<bool> gone(b.strands, false);
  for (int s : strands) {
    if (s < 0 || s >= b.strands) throw std::invalid_argument("strand index out of range");
    gone[s] = true;
  }
  const int left = static_cast<int>(std::count(gone.begin(), gone.end(), false));
  if (left == 0) throw std::invalid_argument("cannot delete every strand");
  std::vector<int> order(b.strands);
  std::iota(order.begin(), order.end(), 0);
  BraidWord out{left, {}};
  for (int g : b.word) {
    const int p = std::abs(g) - 1;
    if (!gone[order[p]] && !gone[order[p + 1]]) {
      int rank = 0;
      for (int q = 0; q < p; ++q) rank += !gone[order[q]];
      out.word.push_back(g > 0 ? rank + 1 : -(rank + 1));
    }
    std::swap(order[p], order[p + 1]);
  }
  return out;
}

std::vector<int> braid_permutation(const BraidWord& b) {
  check_braid(b);
  std::vector<int> order(b.strands);
  std::iota(order.begin(), order.end(), 0);
  for (int g : b.word) std::swap(order[std::abs(g) - 1], order[std::abs(g)]);
  return order;
}

bool is_pure(const BraidWord& b) {
  const auto perm = braid_permutation(b);
  for (int i = 0; i < b.strands; ++i)
    if (perm[i] != i) return false;
  return true;
}

std::vector<std::vector<int>> linking_matrix(const BraidWord& b) {
  if (!is_pure(b)) throw std::invalid_argument("linking matrix needs a pure braid");
  std::vector<std::vector<int>> twice(b.strands, std::vector<int>(b.strands, 0));
  std::vector<int> order(b.strands);
  std::iota(order.begin(), order.end(), 0);
  for (int g : b.word) {
    const int p = std::abs(g) - 1;
    const int x = order[p], y = order[p + 1];
    const int s = g > 0 ? 1 : -1;
    twice[x][y] += s;
    twice[y][x] += s;
    std::swap(order[p], order[p + 1]);
  }
  // Strands of a pure braid cross an even number of times.
  for (auto& row : twice)
    for (int& v : row) v /= 2;
  return twice;
}

bool validate_brunnian(const BraidWord& b) {
  // Pairs are proper sublinks only from three strands on; there they must
  // be unlinked.
  const auto lk = linking_matrix(b);
  if (b.strands >= 3)
    for (const auto& row : lk)
      for (int v : row)
        if (v != 0) return false;
  if (b.strands < 2 || free_reduce(b).word.empty()) return false;
  for (int s = 0; s < b.strands; ++s)
    if (!free_reduce(delete_strands(b, {s})).word.empty()) return false;
  return true;
}

BraidWord brunnian_block(int n) {
  if (n < 2 || n > 5) throw std::invalid_argument("Brunnian blocks are provided for 2..5 strands");
  if (n == 2) return {2, {1, 1}};
  if (n == 3) return {3, {1, -2, 1, -2, 1, -2}};
  const BraidWord inner = brunnian_block(n - 1);
  BraidWord out{n, inner.word};
  out.word.insert(out.word.end(), {n - 1, n - 1});
  for (int g : inverse(inner).word) out.word.push_back(g);
  out.word.insert(out.word.end(), {-(n - 1), -(n - 1)});
  return out;
}

BraidWord compose_blocks(const LinkPolynomial& p) {
  const int n = p.ring_count();
  if (n < 1) throw std::invalid_argument("polynomial has no rings");
  BraidWord out{n, {}};
  for (RingMask m : p.monomials()) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1u) members.push_back(i);
    const int t0 = members.front();
    // Bring each member next to the previous one by passing it over the
    // strands in between; the conjugation undoes this afterwards.
    BraidWord move{n, {}};
    for (std::size_t r = 1; r < members.size(); ++r)
      for (int q = members[r]; q > t0 + static_cast<int>(r); --q) move.word.push_back(q);
    const BraidWord block = brunnian_block(static_cast<int>(members.size()));
    out.word.insert(out.word.end(), move.word.begin(), move.word.end());
    for (int g : block.word) out.word.push_back(g > 0 ? g + t0 : g - t0);
    for (int g : inverse(move).word) out.word.push_back(g);
  }
  return out;
}

std::string braid_to_string(const BraidWord& b) {
  std::ostringstream out;
  out << "s:" << b.strands << " w:";
  for (std::size_t i = 0; i < b.word.size(); ++i) out << (i ? " " : "") << b.word[i];
  return out.str();
}

BraidWord parse_braid(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  BraidWord b;
  if (!(in >> tok) || tok.rfind("s:", 0) != 0)
    throw std::invalid_argument("braid text must start with 's:<strands>'");
  try {
    std::size_t used = 0;
    b.strands = std::stoi(tok.substr(2), &used);
    if (used != tok.size() - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad strand count in '" + tok + "'");
  }
  if (!(in >> tok) || tok.rfind("w:", 0) != 0) throw std::invalid_argument("missing 'w:' word");
  tok = tok.substr(2);
  do {
    if (tok.empty()) continue;
    std::size_t used = 0;
    int g = 0;
    try {
      g = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw std::invalid_argument("bad generator '" + tok + "'");
    b.word.push_back(g);
  } while (in >> tok);
  check_braid(b);
  return b;
}

namespace {

constexpr const char* kPalette[] = {"#d62728", "#2ca02c", "#1f77b4", "#e6c619",
                                    "#d81b9c", "#17becf", "#ff7f0e", "#7b3fa8"};
constexpr double kGap = 40, kMargin = 30, kArc = 12;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

LinkDiagram build_diagram(const BraidWord& b) {
  check_braid(b);
  if (b.strands > 8) throw std::invalid_argument("diagrams support at most 8 strands");
  LinkDiagram d;
  d.strands = b.strands;
  for (int i = 0; i < b.strands; ++i) d.colors.push_back(kPalette[i]);
  std::vector<int> order(b.strands);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t k = 0; k < b.word.size(); ++k) {
    d.occupant.push_back(order);
    const int g = b.word[k];
    const int p = std::abs(g) - 1;
    const int sign = g > 0 ? 1 : -1;
    const int left = order[p], right = order[p + 1];
    d.crossings.push_back({static_cast<int>(k), p, sign, sign > 0 ? left : right,
                           sign > 0 ? right : left});
    std::swap(order[p], order[p + 1]);
  }
  d.occupant.push_back(order);
  d.width = 2 * kMargin + (b.strands - 1) * kGap + (b.strands + 1) * kArc;
  d.height = 2 * kMargin + 2 * b.strands * kArc + std::max<std::size_t>(1, b.word.size()) * kGap;
  return d;
}

std::string render_svg(const LinkDiagram& d) {
  const int s = d.strands;
  const double top = kMargin + s * kArc;
  const auto steps = d.crossings.size();
  const double bottom = top + std::max<std::size_t>(1, steps) * kGap;
  auto x_at = [](int pos) { return kMargin + pos * kGap; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(d.width)
    << "\" height=\"" << num(d.height) << "\" viewBox=\"0 0 " << num(d.width) << ' '
    << num(d.height) << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<g fill=\"none\" stroke-width=\"4\" stroke-linecap=\"round\">\n";
  auto line = [&](double x1, double y1, double x2, double y2, int strand) {
    o << "<path d=\"M" << num(x1) << ' ' << num(y1) << " L" << num(x2) << ' ' << num(y2)
      << "\" stroke=\"" << d.colors[strand] << "\"/>\n";
  };
  auto curve = [&](double x1, double y1, double x2, double y2, const std::string& stroke,
                   int width) {
    const double ym = (y1 + y2) / 2;
    o << "<path d=\"M" << num(x1) << ' ' << num(y1) << " C" << num(x1) << ' ' << num(ym) << ' '
      << num(x2) << ' ' << num(ym) << ' ' << num(x2) << ' ' << num(y2) << "\" stroke=\"" << stroke
      << "\"";
    if (width != 4) o << " stroke-width=\"" << width << "\"";
    o << "/>\n";
  };

  if (steps == 0)
    for (int p = 0; p < s; ++p) line(x_at(p), top, x_at(p), bottom, p);
  for (std::size_t k = 0; k < steps; ++k) {
    const auto& c = d.crossings[k];
    const auto& occ = d.occupant[k];
    const double y1 = top + k * kGap, y2 = y1 + kGap;
    for (int p = 0; p < s; ++p)
      if (p != c.position && p != c.position + 1) line(x_at(p), y1, x_at(p), y2, occ[p]);
    const bool over_from_left = occ[c.position] == c.over;
    const double xl = x_at(c.position), xr = x_at(c.position + 1);
    // Under strand first, then a white halo to open the gap, then over.
    if (over_from_left) {
      curve(xr, y1, xl, y2, d.colors[c.under], 4);
      curve(xl, y1, xr, y2, "white", 12);
      curve(xl, y1, xr, y2, d.colors[c.over], 4);
    } else {
      curve(xl, y1, xr, y2, d.colors[c.under], 4);
      curve(xr, y1, xl, y2, "white", 12);
      curve(xr, y1, xl, y2, d.colors[c.over], 4);
    }
  }
  // Closure: position p leaves the bottom, runs right outside every inner
  // loop and comes back in at the top.
  const auto& last = d.occupant.back();
  for (int p = 0; p < s; ++p) {
    const double off = (s - p) * kArc;
    const double x = x_at(p), xo = x_at(s - 1) + off;
    o << "<path d=\"M" << num(x) << ' ' << num(bottom) << " V" << num(bottom + off) << " H"
      << num(xo) << " V" << num(top - off) << " H" << num(x) << " V" << num(top)
      << "\" stroke=\"" << d.colors[last[p]] << "\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

std::string render_svg(const BraidWord& b) { return render_svg(build_diagram(b)); }

}  // namespace mres
