#include "conway/json_io.hpp"

#include "conway/error.hpp"

namespace conway::json_io {

namespace {

Json digits_to_json(const std::vector<BigInt>& digits) {
  Json out = Json::array();
  for (const BigInt& d : digits) out.push_back(d.get_str());
  return out;
}

std::vector<BigInt> digits_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string("continued fraction field '") + field + "' must be an array");
  std::vector<BigInt> out;
  for (const Json& d : j) {
    if (d.is_number_integer()) {
      out.emplace_back(d.get<long>());
    } else if (d.is_string()) {
      BigInt v;
      if (v.set_str(d.get<std::string>(), 10) != 0) throw ParseError("bad digit '" + d.get<std::string>() + "'");
      out.push_back(v);
    } else {
      throw ParseError(std::string("digits in '") + field + "' must be integers or decimal strings");
    }
  }
  return out;
}

Json optional_root(const std::optional<QuadraticIrrational>& r, int digits) {
  if (!r) return Json{{"value", "inf"}, {"infinite", true}};
  return to_json(*r, digits);
}

}  // namespace

Json to_json(const BigInt& x) { return x.get_str(); }

Json to_json(const QuadraticIrrational& x, int digits) {
  return Json{{"value", x.to_string()},
              {"A", x.a().get_str()},
              {"B", x.b().get_str()},
              {"D", x.d().get_str()},
              {"C", x.c().get_str()},
              {"decimal", x.to_decimal(digits)}};
}

Json to_json(const ContinuedFraction& cf) {
  return Json{{"text", cf.to_string()},
              {"preperiod", digits_to_json(cf.preperiod)},
              {"period", digits_to_json(cf.period)},
              {"sign", cf.sign}};
}

ContinuedFraction continued_fraction_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("continued fraction JSON must be an object");
  ContinuedFraction cf;
  if (j.contains("preperiod")) cf.preperiod = digits_from_json(j.at("preperiod"), "preperiod");
  if (j.contains("period")) cf.period = digits_from_json(j.at("period"), "period");
  if (j.contains("sign")) {
    const Json& s = j.at("sign");
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) throw ParseError("sign must be 1 or -1");
    cf.sign = s.get<int>();
  }
  if (cf.preperiod.empty() && cf.period.empty()) throw ParseError("continued fraction JSON has no digits");
  return cf;
}

Json to_json(const QuadraticForm& q) {
  return Json{{"a", q.a.get_str()}, {"h", q.h.get_str()}, {"b", q.b.get_str()}, {"text", q.to_string()},
              {"discriminant", q.discriminant().get_str()}};
}

Json to_json(const SuperbaseTriple& t) { return Json{{"a", t.a.get_str()}, {"b", t.b.get_str()}, {"c", t.c.get_str()}}; }

Json to_json(const Mat2& m) {
  return Json::array({Json::array({m.p.get_str(), m.q.get_str()}), Json::array({m.r.get_str(), m.s.get_str()})});
}

Json to_json(const FormRoots& r, int digits) {
  return Json{{"dominant", optional_root(r.dominant, digits)}, {"conjugate", optional_root(r.conjugate, digits)}};
}

Json to_json(const RiverEdge& e) {
  return Json{{"positive", e.positive.get_str()}, {"negative", e.negative.get_str()}, {"behind", e.behind.get_str()}};
}

Json to_json(const RiverDescription& r, int digits) {
  Json states = Json::array();
  for (const RiverEdge& e : r.period_states) states.push_back(to_json(e));
  return Json{{"entry_path", to_string(r.entry_path)},
              {"entry_digits", digits_to_json(r.entry_digits)},
              {"reflected", r.reflected},
              {"path_root", to_json(r.path_root, digits)},
              {"path_expansion", to_json(r.path_expansion)},
              {"landing", to_json(r.landing)},
              {"river_period", to_string(r.river_period)},
              {"period_length", r.river_period.size()},
              {"period_states", states},
              {"dominant_root", to_json(r.dominant_root, digits)},
              {"conjugate_root", to_json(r.conjugate_root, digits)}};
}

Json to_json(const LakeDescription& l) {
  Json zeros = Json::array();
  for (const auto& [x, y] : l.zero_vectors) zeros.push_back(Json::array({x.get_str(), y.get_str()}));
  return Json{{"zero_vectors", zeros},
              {"reduced_params", Json{{"m", l.m.get_str()}, {"n", l.n.get_str()}}},
              {"reduced_form", to_json(l.reduced)},
              {"reduction", to_json(l.reduction)},
              {"river_word", to_string(l.river_word)},
              {"adjacent_lakes", l.river_word.empty()}};
}

Json to_json(const TopographNeighborhood& nb) {
  Json vertices = Json::array();
  for (const TopographVertex& v : nb.vertices) {
    vertices.push_back(Json{{"half", v.lower ? "lower" : "upper"},
                            {"word", to_string(v.word)},
                            {"triple", to_json(v.triple)},
                            {"river_edge", v.river_edge}});
  }
  return Json{{"form", to_json(nb.form)}, {"depth", nb.depth}, {"root_edge_on_river", nb.root_edge_on_river}, {"vertices", vertices}};
}

Json to_json(const MonoidExponent& e, int digits) {
  return Json{{"rho", e.rho.to_string()}, {"period_turns", e.turns}, {"lambda", e.to_decimal(digits)}};
}

Json to_json(const GrowthSeries& s, int digits) {
  Json out;
  out["kind"] = s.kind == GrowthSeries::Kind::Monoid ? "monoid" : "form";
  if (s.points.empty()) {
    out["n"] = 0;
    out["w_n"] = "1";
    out["abs_Q_n"] = nullptr;
  } else {
    const GrowthPoint& p = s.points.back();
    out["n"] = p.n;
    out["w_n"] = p.w.get_str();
    if (s.kind == GrowthSeries::Kind::Form) {
      out["abs_Q_n"] = p.norm.get_str();
      out["abs_Q_n_h"] = p.norm_h.get_str();
    } else {
      out["abs_Q_n"] = nullptr;
    }
  }
  out["log_ratio"] = s.last_log_ratio(digits);
  out["tail_max"] = s.tail_max;
  out["exhausted"] = s.exhausted;
  out["exact"] = s.exact ? to_json(*s.exact, digits) : Json(nullptr);
  Json seq = Json::array();
  for (const GrowthPoint& p : s.points) seq.push_back(p.log_ratio);
  out["sequence"] = seq;
  return out;
}

Json to_json(const SandwichReport& r) {
  return Json{{"holds", r.holds}, {"steps", r.steps}, {"first_failure", r.first_failure ? Json(*r.first_failure) : Json(nullptr)}};
}

Json to_json(const TheoremRatio& r) { return Json{{"n", r.n}, {"ratio", r.decimal}}; }

}  // namespace conway::json_io
