#include "mres/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace mres {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("JSON is missing \"") + key + "\"");
  return j.at(key);
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

// Non-finite values are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

bool wide(const std::vector<int>& dims) {
  for (int d : dims)
    if (d > 36) return true;
  return false;
}

Json vector_json(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

}  // namespace

Json polynomial_to_json(const LinkPolynomial& p) {
  Json terms = Json::array();
  std::vector<std::string> names;
  for (RingMask m : p.monomials()) names.push_back(monomial_name(m));
  std::sort(names.begin(), names.end());
  for (const auto& n : names) {
    Json t = Json::array();
    for (char c : n) t.push_back(std::string(1, c));
    terms.push_back(t);
  }
  return Json{{"rings", p.ring_count()}, {"terms", terms}};
}

LinkPolynomial polynomial_from_json(const Json& j) {
  const int rings = field(j, "rings").get<int>();
  if (rings < 1 || rings > kMaxRings) throw std::invalid_argument("rings must be in [1, 26]");
  std::vector<RingMask> masks;
  for (const auto& term : field(j, "terms")) {
    RingMask m = 0;
    for (const auto& v : term) {
      const auto name = v.get<std::string>();
      if (name.size() != 1 || name[0] < 'a' || name[0] >= 'a' + rings)
        throw std::invalid_argument("bad ring name \"" + name + "\"");
      m |= RingMask{1} << (name[0] - 'a');
    }
    masks.push_back(m);
  }
  return LinkPolynomial(rings, std::move(masks));
}

Json state_to_json(const State& s) {
  const auto& dims = s.ket.dims();
  const bool digits = wide(dims);
  Json amps = Json::array();
  for (const auto& [l, a] : s.ket.amplitudes()) {
    Json e;
    if (digits) e["digits"] = std::vector<int>(l.begin(), l.end());
    else e["label"] = label_to_string(l);
    e["re"] = a.real();
    e["im"] = a.imag();
    amps.push_back(std::move(e));
  }
  Json out{{"dims", dims}, {"amps", amps}};
  if (!s.environment.empty()) out["environment"] = s.environment;
  return out;
}

State state_from_json(const Json& j) {
  const auto dims = field(j, "dims").get<std::vector<int>>();
  check_dims(dims);
  State s{SparseKet(dims), {}};
  for (const auto& e : field(j, "amps")) {
    Label l;
    if (e.contains("digits")) {
      for (int d : e.at("digits").get<std::vector<int>>()) {
        if (d < 0 || d > 255) throw std::invalid_argument("digit out of range");
        l.push_back(static_cast<std::uint8_t>(d));
      }
    } else {
      l = label_from_string(field(e, "label").get<std::string>(), dims);
    }
    const double im = e.contains("im") ? e.at("im").get<double>() : 0.0;
    s.ket.add(l, Complex(field(e, "re").get<double>(), im));
  }
  if (j.contains("environment")) {
    s.environment = j.at("environment").get<std::vector<int>>();
    std::sort(s.environment.begin(), s.environment.end());
    for (int e : s.environment)
      if (e < 0 || e >= s.ket.site_count())
        throw std::invalid_argument("environment site out of range");
    if (std::adjacent_find(s.environment.begin(), s.environment.end()) != s.environment.end())
      throw std::invalid_argument("environment sites repeat");
  }
  if (s.ket.term_count() == 0) throw std::invalid_argument("state has no amplitudes");
  return s;
}

Json density_to_json(const DensityOperator& rho) {
  Json support = Json::array();
  for (const auto& l : rho.support()) {
    if (wide(rho.dims())) support.push_back(std::vector<int>(l.begin(), l.end()));
    else support.push_back(label_to_string(l));
  }
  Json matrix = Json::array();
  for (Eigen::Index i = 0; i < rho.matrix().rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < rho.matrix().cols(); ++k)
      row.push_back(complex_json(rho.matrix()(i, k)));
    matrix.push_back(row);
  }
  return Json{{"sites", rho.sites()}, {"dims", rho.dims()}, {"support", support}, {"matrix", matrix}};
}

Json constellation_to_json(const Constellation& c) {
  Json stars = Json::array();
  for (const auto& s : c.stars) stars.push_back(Json{{"theta", s.theta}, {"phi", s.phi}});
  return Json{{"stars", stars}};
}

Constellation constellation_from_json(const Json& j) {
  Constellation c;
  for (const auto& s : field(j, "stars"))
    c.stars.push_back({field(s, "theta").get<double>(), field(s, "phi").get<double>()});
  return c;
}

Json verdict_to_json(const Verdict& v) {
  if (const auto* s = std::get_if<Separable>(&v)) {
    Json terms = Json::array();
    for (const auto& t : s->decomposition) {
      Json factors = Json::array();
      for (const auto& f : t.factors) factors.push_back(vector_json(f));
      terms.push_back(Json{{"weight", t.weight}, {"factors", factors}});
    }
    return Json{{"verdict", "separable"},
                {"witness", Json{{"decomposition", terms},
                                 {"reconstruction_error", number(s->reconstruction_error)}}}};
  }
  if (const auto* e = std::get_if<Entangled>(&v))
    return Json{{"verdict", "entangled"},
                {"witness", Json{{"transposed", e->transposed}, {"min_eig", number(e->min_eig)}}}};
  const auto& i = std::get<Inconclusive>(v);
  return Json{{"verdict", "inconclusive"},
              {"diagnostics", Json{{"min_pt_eigenvalue", number(i.min_pt_eigenvalue)},
                                   {"best_separable_distance", number(i.best_separable_distance)}}}};
}

Json profile_to_json(const ResistanceProfile& p) {
  Json out{{"sites", p.site_count}, {"symmetric", p.symmetric}};
  for (auto it = p.levels.rbegin(); it != p.levels.rend(); ++it) {
    Json level = Json::array();
    for (const auto& sv : it->second) {
      Json e{{"subset", sv.traced}};
      if (sv.implied) {
        e["verdict"] = "entangled";
        e["implied"] = true;
      } else {
        const Json v = verdict_to_json(sv.verdict);
        e["verdict"] = v.at("verdict");
        if (v.contains("witness") && v.at("verdict") == "entangled") e["witness"] = v.at("witness");
        if (v.contains("diagnostics")) e["diagnostics"] = v.at("diagnostics");
        if (v.at("verdict") == "separable")
          e["terms"] = v.at("witness").at("decomposition").size();
      }
      level.push_back(std::move(e));
    }
    out["traced_" + std::to_string(it->first)] = std::move(level);
  }
  return out;
}

Json classify_to_json(const ClassifyResult& r, const std::string& name) {
  Json out{{"state", name}};
  out["m"] = r.m ? Json(*r.m) : Json(nullptr);
  if (!r.m) out["reason"] = r.reason;
  out["profile"] = profile_to_json(r.profile);
  return out;
}

Json census_to_json(const LinkClassCensus& c) {
  Json reps = Json::array();
  for (const auto& p : c.representatives) reps.push_back(p.to_string());
  return Json{{"rings", c.ring_count}, {"classes", c.class_count}, {"representatives", reps}};
}

}  // namespace mres
