#include "berk/serialize.hpp"

#include <fstream>
#include <sstream>

#include "berk/errors.hpp"

namespace berk {

namespace {

Json opt_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }
Json opt_rat(const std::optional<Rational>& r) { return r ? Json(to_string(*r)) : Json(nullptr); }

std::string get_string(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw InvalidArgument(std::string("missing string field '") + key + "'");
  }
  return j.at(key).get<std::string>();
}

Poly poly_from(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InvalidArgument(std::string("missing coefficient list '") + key + "'");
  }
  std::vector<Rational> cs;
  for (const auto& c : j.at(key)) {
    if (c.is_string()) {
      cs.push_back(parse_rational(c.get<std::string>()));
    } else if (c.is_number_integer()) {
      cs.emplace_back(c.get<long>());
    } else {
      throw InvalidArgument(std::string("coefficients in '") + key + "' must be strings or integers");
    }
  }
  return Poly(cs);
}

Json poly_json(const Poly& p) {
  Json a = Json::array();
  for (long i = 0; i <= p.degree(); ++i) a.push_back(to_string(p.coeff(i)));
  return a;
}

}  // namespace

Json to_json(const BerkPoint& x) {
  Json j;
  if (x.is_disc()) {
    j["type"] = "disc";
    j["center"] = to_string(x.center());
    j["log_radius"] = to_string(x.log_radius());
  } else {
    j["type"] = "I";
    j["center"] = x.is_infinity() ? std::string("inf") : to_string(x.center());
  }
  return j;
}

BerkPoint point_from_json(const Json& j, long p) {
  if (!j.is_object()) throw InvalidArgument("point must be a JSON object");
  std::string type = get_string(j, "type");
  std::string center = get_string(j, "center");
  if (type == "I") {
    if (center == "inf") return BerkPoint::infinity(p);
    return BerkPoint::type_i(parse_rational(center), p);
  }
  if (type == "disc") return BerkPoint::disc(parse_rational(center), parse_rational(get_string(j, "log_radius")), p);
  throw InvalidArgument("unknown point type '" + type + "'");
}

Json to_json(const RationalMap& phi) {
  Json j;
  j["p"] = phi.prime();
  j["precision"] = phi.context().precision;
  j["numerator"] = poly_json(phi.numerator());
  j["denominator"] = poly_json(phi.denominator());
  return j;
}

RationalMap map_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("map specification must be a JSON object");
  if (!j.contains("p") || !j.at("p").is_number_integer()) throw InvalidArgument("missing integer field 'p'");
  long p = j.at("p").get<long>();
  long prec = 40;
  if (j.contains("precision")) {
    if (!j.at("precision").is_number_integer()) throw InvalidArgument("'precision' must be an integer");
    prec = j.at("precision").get<long>();
  }
  return RationalMap(poly_from(j, "numerator"), poly_from(j, "denominator"), FieldContext(p, prec));
}

Json to_json(const DiscreteMeasure& mu) {
  Json a = Json::array();
  for (const auto& [x, w] : mu.atoms()) {
    Json e;
    e["point"] = to_json(x);
    e["weight"] = to_string(w);
    a.push_back(e);
  }
  return a;
}

Json to_json(const WeightedPreimageSet& s) {
  Json a = Json::array();
  for (const auto& [x, m] : s) {
    Json e;
    e["point"] = to_json(x);
    e["multiplicity"] = m;
    a.push_back(e);
  }
  return a;
}

Json to_json(const FiniteTree& t) {
  Json j;
  Json vs = Json::array();
  for (const auto& v : t.vertices()) vs.push_back(to_json(v));
  Json es = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.parent(i) < 0) continue;
    Json e;
    e["child"] = i;
    e["parent"] = t.parent(i);
    e["length"] = to_string(t.edge_length(i));
    es.push_back(e);
  }
  j["vertices"] = vs;
  j["edges"] = es;
  j["root"] = t.root();
  return j;
}

Json to_json(const LyapunovReport& r) {
  Json j;
  j["map"] = r.map;
  j["p"] = r.p;
  j["degree"] = r.d;
  j["kappa"] = to_string(r.kappa);
  j["lipschitz_log"] = to_string(r.lipschitz_log);
  j["g1_sup"] = to_string(r.g1_sup);
  j["g1_within_lipschitz"] = r.g1_within_lipschitz;
  j["good_reduction"] = r.good_reduction;
  j["separable"] = r.separable;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["n"] = row.n;
    e["est_prime"] = to_string(row.est_prime);
    e["est_sharp"] = to_string(row.est_sharp);
    e["I_n"] = opt_rat(row.I_n);
    e["eq20"] = opt_bool(row.eq20_ok);
    e["prop45"] = opt_bool(row.prop45_ok);
    e["prop45_g1"] = opt_bool(row.prop45_g1_ok);
    e["lemma43_integrated"] = opt_bool(row.lemma_level_ok);
    e["bracket"] = row.bracket_ok;
    e["telescope"] = row.telescope_ok;
    rows.push_back(e);
  }
  j["levels"] = rows;
  j["lemma43"] = {{"samples", r.lemma43.slacks.size()},
                  {"min_slack", to_string(r.lemma43.min_slack)},
                  {"ok", r.lemma43.ok}};
  Json cands = Json::array();
  for (const auto& c : r.theorem1.candidates) {
    cands.push_back({{"gamma", c.gamma}, {"lipschitz_log", to_string(c.lipschitz)},
                     {"bound", to_string(c.bound)}, {"eq20", c.ok}});
  }
  j["theorem1"] = {{"candidates", cands},
                   {"best_bound", to_string(r.theorem1.best_bound)},
                   {"best_gamma", r.theorem1.best_gamma},
                   {"own_estimate", to_string(r.theorem1.own_estimate)},
                   {"own_meets_best", r.theorem1.own_meets_best},
                   {"ok", r.theorem1.ok}};
  Json md = Json::array();
  for (const auto& m : r.theorem2.min_log_diam) md.push_back(to_string(m));
  j["theorem2"] = {{"verdict", to_string(r.theorem2.verdict)},
                   {"equality", r.theorem2.equality},
                   {"min_log_diam", md},
                   {"last_estimate", to_string(r.theorem2.last_estimate)},
                   {"last_correction", to_string(r.theorem2.last_correction)}};
  Json ests = Json::array();
  for (const auto& e : r.prop49.estimates) ests.push_back(to_string(e));
  j["prop49"] = {{"verdict", to_string(r.prop49.verdict)},
                 {"good_reduction", r.prop49.good_reduction},
                 {"separable", r.prop49.separable},
                 {"derivative_at_gauss", to_string(r.prop49.derivative_at_gauss)},
                 {"estimates", ests}};
  j["eq20"] = r.eq20_ok;
  j["prop45"] = r.prop45_ok;
  j["ok"] = r.ok;
  return j;
}

std::string to_csv(const LyapunovReport& r) {
  std::ostringstream os;
  os << "n,est_prime,est_sharp,I_n,eq20,prop45,prop45_g1\n";
  auto b = [](const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : ""; };
  for (const auto& row : r.rows) {
    os << row.n << ',' << to_string(row.est_prime) << ',' << to_string(row.est_sharp) << ','
       << (row.I_n ? to_string(*row.I_n) : "") << ',' << b(row.eq20_ok) << ',' << b(row.prop45_ok) << ','
       << b(row.prop45_g1_ok) << '\n';
  }
  return os.str();
}

Mobius parse_mobius(const std::string& text, long p) {
  if (text == "id") return Mobius::identity();
  if (text == "z+1") return Mobius::translation(Rational(1));
  if (text == "pz") return Mobius::scaling(Rational(p));
  if (text == "z/p") return Mobius::scaling(Rational(1, p));
  if (text == "1/z") return Mobius::inversion();
  std::vector<Rational> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(parse_rational(item));
  if (parts.size() != 4) throw InvalidArgument("Mobius transformation '" + text + "' needs four entries a,b,c,d");
  return Mobius(parts[0], parts[1], parts[2], parts[3]);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace berk
