#include "berk/cli_runner.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "berk/errors.hpp"
#include "berk/serialize.hpp"
#include "berk/suite.hpp"

namespace berk {

namespace {

Json read_map_json(const RunConfig& cfg) {
  if (cfg.map_path.empty()) throw InvalidArgument("--map is required");
  Json j = load_json_file(cfg.map_path);
  if (!j.is_object()) throw InvalidArgument("map file must hold a JSON object");
  if (cfg.prime) j["p"] = *cfg.prime;
  if (cfg.precision) j["precision"] = *cfg.precision;
  return j;
}

std::vector<std::string> conjugate_names(const Json& j) {
  std::vector<std::string> out;
  if (!j.contains("conjugates")) return out;
  if (!j.at("conjugates").is_array()) throw InvalidArgument("'conjugates' must be a list of strings");
  for (const auto& c : j.at("conjugates")) {
    if (!c.is_string()) throw InvalidArgument("'conjugates' must be a list of strings");
    out.push_back(c.get<std::string>());
  }
  return out;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + cfg.out_path + "'");
  f << text;
}

BerkPoint parse_target(const std::string& text, long p) {
  if (text.empty()) return BerkPoint::gauss(p);
  if (text.front() == '{') {
    try {
      return point_from_json(Json::parse(text), p);
    } catch (const Json::parse_error& e) {
      throw InvalidArgument(std::string("malformed target point: ") + e.what());
    }
  }
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    if (text == "inf") return BerkPoint::infinity(p);
    return BerkPoint::type_i(parse_rational(text), p);
  }
  return BerkPoint::disc(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)), p);
}

// Runs body and maps library errors onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const RequiresExtension& e) {
    err << "error: requires extension: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const InsufficientPrecision& e) {
    err << "error: insufficient precision: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << "\n";
    return kExitInput;
  } catch (const MultiplicityMismatch& e) {
    err << "error: multiplicity mismatch: " << e.what() << "\n";
    return kExitVerification;
  } catch (const InternalError& e) {
    err << "error: internal consistency check failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.n_max && *cfg.n_max < 0) throw InvalidArgument("--levels must be nonnegative");
  if (cfg.budget < 1) throw InvalidArgument("--budget must be at least 1");
  if (cfg.prime && !is_prime(*cfg.prime)) throw InvalidArgument("--prime must be prime");
  if (cfg.precision && *cfg.precision < 1) throw InvalidArgument("--precision must be positive");
  if (cfg.format != "json" && cfg.format != "csv") throw InvalidArgument("--format must be json or csv");
}

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    Json j = read_map_json(cfg);
    RationalMap phi = map_from_json(j);
    AnalysisOptions opts;
    opts.n_max = cfg.n_max.value_or(4);
    opts.budget = cfg.budget;
    auto names = conjugate_names(j);
    names.insert(names.end(), cfg.conjugates.begin(), cfg.conjugates.end());
    for (const auto& s : names) opts.candidates.push_back(parse_mobius(s, phi.prime()));
    LyapunovReport rep = analyze(phi, opts);
    emit(cfg, cfg.format == "csv" ? to_csv(rep) : dump(to_json(rep)), out);
    if (!rep.ok) {
      err << "verification failed for " << rep.map << "\n";
      return static_cast<int>(kExitVerification);
    }
    return static_cast<int>(kExitOk);
  });
}

int run_preimages(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    RationalMap phi = map_from_json(read_map_json(cfg));
    const long p = phi.prime();
    BerkPoint target = parse_target(cfg.target, p);
    if (!target.is_disc()) throw InvalidArgument("target must be a disc point");
    long n = cfg.n_max.value_or(1);
    std::map<BerkPoint, long> atoms{{target, 1}};
    long total = 0;
    for (long k = 0; k < n; ++k) {
      std::map<BerkPoint, long> next;
      for (const auto& [x, w] : atoms) {
        for (const auto& wp : preimages(phi, x)) next[wp.point] += w * wp.multiplicity;
      }
      atoms = std::move(next);
      total += static_cast<long>(atoms.size());
      if (total > cfg.budget) throw BudgetExceeded("preimage atoms exceed the budget of " + std::to_string(cfg.budget));
    }
    Json list = Json::array();
    for (const auto& [x, m] : atoms) list.push_back({{"point", to_json(x)}, {"multiplicity", m}});
    Json j{{"map", to_json(phi)}, {"target", to_json(target)}, {"levels", n}, {"preimages", list}};
    emit(cfg, dump(j), out);
    return static_cast<int>(kExitOk);
  });
}

int run_tree(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    RationalMap phi = map_from_json(read_map_json(cfg));
    long n = cfg.n_max.value_or(2);
    PullbackLevel lv = nu(phi, BerkPoint::gauss(phi.prime()), n, cfg.budget);
    std::vector<BerkPoint> pts;
    for (const auto& [x, w] : lv.measure.atoms()) pts.push_back(x);
    FiniteTree tree = FiniteTree::span(pts);
    auto [pos, neg] = branching_measure(tree);
    Json j{{"map", to_json(phi)},
           {"levels", n},
           {"measure", to_json(lv.measure)},
           {"tree", to_json(tree)},
           {"branching_measure", to_json(pos + neg)}};
    emit(cfg, dump(j), out);
    return static_cast<int>(kExitOk);
  });
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    SuiteOptions opts;
    opts.n_max = cfg.n_max.value_or(4);
    opts.budget = cfg.budget;
    std::vector<CorpusEntry> corpus;
    if (cfg.map_path.empty()) {
      corpus = builtin_corpus();
    } else {
      Json j = load_json_file(cfg.map_path);
      if (!j.is_object() || !j.contains("maps") || !j.at("maps").is_array()) {
        throw InvalidArgument("corpus file needs a 'maps' list");
      }
      if (j.contains("fixture")) {
        if (j.at("fixture") != "corrupt_multiplicity_oracle") throw InvalidArgument("unknown fixture");
        opts.corrupt_multiplicity_oracle = true;
      }
      if (j.contains("samples")) {
        const Json& s = j.at("samples");
        opts.type_ii_samples = s.value("type_ii", opts.type_ii_samples);
        opts.lipschitz_pairs = s.value("lipschitz_pairs", opts.lipschitz_pairs);
        opts.equi_points = s.value("equi_points", opts.equi_points);
        if (s.contains("seed")) opts.seed = s.at("seed").get<std::uint64_t>();
      }
      long idx = 0;
      for (Json m : j.at("maps")) {
        if (!m.is_object()) throw InvalidArgument("corpus entries must be map objects");
        if (cfg.precision) m["precision"] = *cfg.precision;
        std::string name = m.value("name", "map " + std::to_string(idx));
        corpus.push_back({name, map_from_json(m), conjugate_names(m)});
        ++idx;
      }
    }
    if (corpus.empty()) throw InvalidArgument("empty corpus");
    for (auto& e : corpus) e.conjugates.insert(e.conjugates.end(), cfg.conjugates.begin(), cfg.conjugates.end());

    Json results = Json::array();
    bool all_ok = true;
    std::size_t width = 0;
    std::vector<MapSuiteResult> runs;
    for (const auto& e : corpus) {
      try {
        runs.push_back(run_map_suite(e, opts));
      } catch (const RequiresExtension& x) {
        throw RequiresExtension(e.name + ": " + x.what());
      } catch (const BudgetExceeded& x) {
        throw BudgetExceeded(e.name + ": " + x.what());
      }
      width = std::max(width, e.name.size());
    }
    for (const auto& r : runs) {
      Json checks = Json::array();
      for (const auto& c : r.checks) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << r.name << std::setw(22) << c.name
            << (c.ok ? "ok    " : "FAIL  ") << c.detail << "\n";
        checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
      }
      all_ok = all_ok && r.ok();
      results.push_back({{"name", r.name}, {"map", r.map}, {"p", r.p}, {"bad_reduction", r.bad_reduction},
                         {"ok", r.ok()}, {"checks", checks}});
    }
    PreimageStats st = preimage_stats();
    out << "maps: " << runs.size() << ", preimage calls: " << st.calls << ", verdict: "
        << (all_ok ? "pass" : "FAIL") << "\n";
    if (!cfg.out_path.empty()) {
      Json rep{{"maps", results}, {"ok", all_ok}};
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f) throw InvalidArgument("cannot write '" + cfg.out_path + "'");
      f << dump(rep);
    }
    return static_cast<int>(all_ok ? kExitOk : kExitVerification);
  });
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "analyze") return run_analyze(cfg, out, err);
  if (cfg.command == "preimages") return run_preimages(cfg, out, err);
  if (cfg.command == "tree") return run_tree(cfg, out, err);
  if (cfg.command == "verify") return run_verify(cfg, out, err);
  err << "error: unknown command '" << cfg.command << "'\n";
  return kExitInput;
}

}  // namespace berk
