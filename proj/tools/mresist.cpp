// mresist: link polynomials, m-resistant states and their verification.
//
// Exit codes: 0 success, 1 domain error, 2 usage error, 3 undetermined or
// inconclusive outcome.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "mres/braid.hpp"
#include "mres/builders.hpp"
#include "mres/json_io.hpp"
#include "mres/linkpoly.hpp"
#include "mres/orthoarray.hpp"
#include "mres/resistance.hpp"

namespace {

using namespace mres;

constexpr int kOk = 0, kDomain = 1, kUsage = 2, kUndetermined = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kSchemas = R"(
JSON formats
  polynomial     {"rings": 3, "terms": [["a","b"], ["b","c"]]}
  state          {"dims": [2,2,2], "amps": [{"label": "000", "re": 0.7, "im": 0}, ...],
                  "environment": [3]}
                 Labels use digits 0-9 then a-z; a site wider than 36 switches
                 every amplitude to "digits": [..]. Environment sites are
                 always traced out and are not part of the link.
  constellation  {"stars": [{"theta": 0.0, "phi": 0.0}, ...]}
  report         {"state": name, "m": 1 | null, "reason": ..., "profile":
                  {"sites": N, "symmetric": false, "traced_t": [{"subset": [..],
                  "verdict": "separable" | "entangled" | "inconclusive", ...}]}}
Orthogonal arrays are text: a header line "OA r N d k", then r rows of N
symbols separated by spaces.

Input defaults to stdin when --in is absent or "-"; output goes to stdout
unless --out is given.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 undetermined or
inconclusive outcome.
)";

std::string slurp(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void emit(const Json& j, const std::string& path) { emit(j.dump(2) + "\n", path); }

RingMask parse_rings(const std::string& text, int ring_count) {
  RingMask m = 0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.size() != 1 || item[0] < 'a' || item[0] >= 'a' + ring_count)
      throw std::invalid_argument("bad ring \"" + item + "\"");
    m |= RingMask{1} << (item[0] - 'a');
  }
  return m;
}

std::string input_name(const std::string& path) {
  return path.empty() || path == "-" ? "stdin" : path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"m-resistant links and quantum states"};
  app.footer(kSchemas);
  app.require_subcommand(1);

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "root seed for randomized separability search");

  std::string in, out;
  int rings = 0, m = -1, n = 0, d = 0, k = 0, lift = -1, block = 0;
  double theta = 0;
  std::string ring_list, family, constellation, oa_in;
  bool symmetric = false;
  ToleranceConfig cfg;
  std::vector<int> drop;

  auto add_tolerances = [&](CLI::App* c) {
    c->add_option("--ppt-tol", cfg.ppt_tol, "PT eigenvalue threshold")->capture_default_str();
    c->add_option("--sep-tol", cfg.sep_tol, "separable distance threshold")->capture_default_str();
    c->add_option("--max-iters", cfg.gilbert_max_iters, "Gilbert iterations")->capture_default_str();
    c->add_option("--restarts", cfg.restarts, "product-state search restarts")->capture_default_str();
  };

  auto* links = app.add_subcommand("links", "link polynomials")->require_subcommand(1);
  auto* enumerate = links->add_subcommand("enumerate", "count link classes up to relabeling");
  enumerate->add_option("--rings", rings, "ring count (2..5)")->required();
  enumerate->add_option("--out", out, "write the census JSON here and print only the count");
  auto* resist = links->add_subcommand("resist", "the m-resistant polynomial on N rings");
  resist->add_option("--rings", rings)->required();
  resist->add_option("--m", m)->required();
  auto* cutcmd = links->add_subcommand("cut", "set rings to zero");
  cutcmd->add_option("--in", in, "polynomial JSON");
  cutcmd->add_option("--rings", ring_list, "comma separated ring letters")->required();
  auto* check = links->add_subcommand("check", "connectivity and resistance of a polynomial");
  check->add_option("--in", in, "polynomial JSON");

  auto* state = app.add_subcommand("state", "quantum states")->require_subcommand(1);
  auto* build = state->add_subcommand("build", "construct a state");
  build->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"ghz", "w", "mixed", "pure-ansatz", "majorana", "psi", "oa"}));
  build->add_option("--n", n, "site count (ghz, mixed, pure-ansatz, psi, majorana)");
  build->add_option("--m", m, "resistance (mixed, pure-ansatz, psi) or pole stars (majorana)");
  build->add_option("--constellation", constellation, "majorana: constellation JSON file");
  build->add_option("--lift", lift, "majorana: equatorial stars of the (n,1) constellation to lift");
  build->add_option("--theta", theta, "majorana: polar angle of the lifted stars");
  build->add_option("--d", d, "oa: alphabet size");
  build->add_option("--k", k, "oa: strength");
  build->add_option("--oa", oa_in, "oa: read the array from this file instead");
  build->add_option("--delete", drop, "oa: columns to delete");
  auto* classify_cmd = state->add_subcommand("classify", "find m by exhaustive reduction tests");
  classify_cmd->add_option("--in", in, "state JSON");
  classify_cmd->add_flag("--symmetric", symmetric, "test one subset per size");
  classify_cmd->add_option("--seed", seed);
  add_tolerances(classify_cmd);
  auto* tolink = state->add_subcommand("to-link", "link polynomial of a state");
  tolink->add_option("--in", in, "state JSON");
  tolink->add_option("--seed", seed);
  add_tolerances(tolink);
  auto* scan = state->add_subcommand("scan", "classify lifted Majorana constellations");
  scan->add_option("--n", n)->required();
  scan->add_option("--lift", lift)->required();
  scan->add_option("--seed", seed);
  add_tolerances(scan);

  auto* oa = app.add_subcommand("oa", "orthogonal arrays")->require_subcommand(1);
  auto* bush = oa->add_subcommand("bush", "index-unity array OA(d^k, d+1, d, k)");
  bush->add_option("--d", d)->required();
  bush->add_option("--k", k)->required();
  auto* validate = oa->add_subcommand("validate", "check the strength of an array");
  validate->add_option("--in", in, "array text");
  validate->add_option("--k", k)->required();

  auto* link = app.add_subcommand("link", "braid drawings")->require_subcommand(1);
  auto* render = link->add_subcommand("render", "SVG of a polynomial's Brunnian braid");
  render->add_option("--in", in, "polynomial JSON");
  render->add_option("--block", block, "draw the n-strand Brunnian block instead");
  render->add_option("--out", out, "SVG file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  cfg.seed = seed;

  try {
    if (*enumerate) {
      if (rings < 1 || rings > 5) throw UsageError("--rings must be in 1..5");
      const auto census = enumerate_classes(rings, threads);
      if (out.empty()) {
        emit(census_to_json(census), "");
      } else {
        emit(census_to_json(census), out);
        std::cout << census.class_count << "\n";
      }
      return kOk;
    }
    if (*resist) {
      emit(polynomial_to_json(generate_m_resistant(rings, m)), "");
      return kOk;
    }
    if (*cutcmd) {
      const auto p = polynomial_from_json(read_json(in));
      emit(polynomial_to_json(cut(p, parse_rings(ring_list, p.ring_count()))), "");
      return kOk;
    }
    if (*check) {
      const auto p = polynomial_from_json(read_json(in));
      Json j{{"polynomial", p.to_string()}, {"canonical", p.canonical()}};
      const auto status = connectivity(p, full_mask(p.ring_count()));
      j["connectivity"] = std::holds_alternative<FullyConnected>(status)     ? "full"
                          : std::holds_alternative<FullyDisconnected>(status) ? "none"
                                                                              : "partial";
      const auto r = is_m_resistant_link(p);
      j["m"] = r ? Json(*r) : Json(nullptr);
      emit(j, "");
      return r ? kOk : kUndetermined;
    }
    if (*build) {
      State s;
      if (family == "ghz") {
        s.ket = ghz(n);
      } else if (family == "w") {
        s.ket = w3();
      } else if (family == "mixed") {
        s = mixture_state(mixed_from_polynomial(n, m));
      } else if (family == "pure-ansatz") {
        s.ket = pure_ansatz(n, m);
      } else if (family == "psi") {
        s.ket = psi_family(n, m);
      } else if (family == "majorana") {
        Constellation c;
        if (!constellation.empty()) c = constellation_from_json(read_json(constellation));
        else if (lift >= 0) c = lifted_constellation(n, lift, theta);
        else c = pole_equator_constellation(n, m);
        s.ket = majorana_state(c);
      } else {
        OrthogonalArray a;
        if (!oa_in.empty()) a = read_oa(slurp(oa_in));
        else a = construct_bush(d, k);
        if (!drop.empty()) a = delete_columns(a, drop);
        s.ket = oa_to_state(a);
      }
      emit(state_to_json(s), "");
      return kOk;
    }
    if (*classify_cmd) {
      const auto s = state_from_json(read_json(in));
      const auto r = classify(s, cfg, symmetric, threads);
      emit(classify_to_json(r, input_name(in)), "");
      return r.m ? kOk : kUndetermined;
    }
    if (*tolink) {
      const auto s = state_from_json(read_json(in));
      try {
        emit(polynomial_to_json(state_to_link_polynomial(s, cfg, threads)), "");
      } catch (const std::runtime_error& e) {
        std::cerr << "mresist: " << e.what() << "\n";
        return kUndetermined;
      }
      return kOk;
    }
    if (*scan) {
      const auto grid = default_scan_grid();
      Json points = Json::array();
      bool all = true;
      for (const auto& pt : constellation_scan(n, lift, grid, cfg, threads)) {
        all = all && pt.result.m.has_value();
        Json e{{"theta", pt.theta}};
        e["m"] = pt.result.m ? Json(*pt.result.m) : Json(nullptr);
        if (!pt.result.m) e["reason"] = pt.result.reason;
        points.push_back(std::move(e));
      }
      emit(Json{{"n", n}, {"lifted", lift}, {"points", points}}, "");
      return all ? kOk : kUndetermined;
    }
    if (*bush) {
      emit(write_oa(construct_bush(d, k)), "");
      return kOk;
    }
    if (*validate) {
      const auto a = read_oa(slurp(in));
      const auto r = validate_strength(a, k);
      if (const int* lambda = std::get_if<int>(&r)) {
        emit(Json{{"valid", true}, {"rows", a.rows()}, {"columns", a.columns()},
                  {"alphabet", a.alphabet()}, {"strength", k}, {"lambda", *lambda}},
             "");
        return kOk;
      }
      const auto& f = std::get<StrengthFailure>(r);
      emit(Json{{"valid", false}, {"columns", f.columns}, {"tuple", f.tuple},
                {"count", f.count}, {"expected", f.expected}},
           "");
      return kDomain;
    }
    if (*render) {
      BraidWord b = block > 0 ? brunnian_block(block) : compose_blocks(polynomial_from_json(read_json(in)));
      emit(render_svg(b), out);
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "mresist: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "mresist: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
