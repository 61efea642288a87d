#include "berk/suite.hpp"

#include <algorithm>
#include <sstream>

#include "berk/errors.hpp"
#include "berk/reduction.hpp"
#include "berk/serialize.hpp"

namespace berk {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Rational random_center(std::mt19937_64& rng, long p) {
  Integer span(1);
  for (int i = 0; i < 3; ++i) span *= p;
  long u = uniform(rng, -span.get_si(), span.get_si());
  return Rational(u) * pow_p(p, -uniform(rng, 0, 2));
}

RationalMap poly_map(std::vector<long> f, long den, long p) {
  std::vector<Rational> cs;
  for (long c : f) cs.emplace_back(c);
  return RationalMap(Poly(cs), Poly({Rational(den)}), FieldContext(p));
}

std::string fail_detail(const std::string& what, long n) {
  std::ostringstream os;
  os << what << " at n=" << n;
  return os.str();
}

}  // namespace

BerkPoint random_type_ii(std::mt19937_64& rng, long p) {
  return BerkPoint::disc(random_center(rng, p), Rational(uniform(rng, -3, 3)), p);
}

BerkPoint random_disc(std::mt19937_64& rng, long p) {
  long den = uniform(rng, 1, 3);
  return BerkPoint::disc(random_center(rng, p), Rational(uniform(rng, -3 * den, 3 * den), den), p);
}

BerkPoint random_type_i(std::mt19937_64& rng, long p) {
  if (uniform(rng, 0, 19) == 0) return BerkPoint::infinity(p);
  long u = uniform(rng, -10000, 10000);
  return BerkPoint::type_i(Rational(u) * pow_p(p, uniform(rng, -3, 3)), p);
}

std::vector<CorpusEntry> builtin_corpus() {
  std::vector<CorpusEntry> c;
  c.push_back({"z^2 over Q_2", poly_map({0, 0, 1}, 1, 2), {}});
  c.push_back({"z^3 over Q_3", poly_map({0, 0, 0, 1}, 1, 3), {}});
  c.push_back({"z^5 over Q_5", poly_map({0, 0, 0, 0, 0, 1}, 1, 5), {}});
  c.push_back({"z^3 over Q_2", poly_map({0, 0, 0, 1}, 1, 2), {}});
  c.push_back({"z^2+1 over Q_5", poly_map({1, 0, 1}, 1, 5), {"z+1", "1/z"}});
  c.push_back({"z^2+z over Q_3", poly_map({0, 1, 1}, 1, 3), {"z/p"}});
  c.push_back({"z^2+3 over Q_3", poly_map({3, 0, 1}, 1, 3), {}});
  c.push_back({"2z^2 over Q_2", poly_map({0, 0, 2}, 1, 2), {"z/p"}});
  c.push_back({"3z^2 over Q_3", poly_map({0, 0, 3}, 1, 3), {"z/p"}});
  c.push_back({"5z^2 over Q_5", poly_map({0, 0, 5}, 1, 5), {"z/p"}});
  c.push_back({"(z^2+1)/2 over Q_2", poly_map({1, 0, 1}, 2, 2), {"z+1", "z/p"}});
  c.push_back({"(z^2+1)/5 over Q_5", poly_map({1, 0, 1}, 5, 5), {"pz", "z/p"}});
  c.push_back({"(z^2+z)/2 over Q_2", poly_map({0, 1, 1}, 2, 2), {"pz", "z/p"}});
  c.push_back({"(z^2+z)/3 over Q_3", poly_map({0, 1, 1}, 3, 3), {"pz", "z/p"}});
  c.push_back({"(z^2-z)/5 over Q_5", poly_map({0, -1, 1}, 5, 5), {"pz", "z/p"}});
  c.push_back({"((z^2+z)/3) conjugated by z+1 over Q_3",
               conjugate(poly_map({0, 1, 1}, 3, 3), Mobius::translation(Rational(1))), {"z+1", "1/z"}});
  c.push_back({"z^3/5 over Q_5", poly_map({0, 0, 0, 1}, 5, 5), {"pz"}});
  return c;
}

bool MapSuiteResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

long multiplicity_oracle(const RationalMap& phi, const BerkPoint& x) {
  long m = multiplicity(phi, x);
  if (x.is_disc()) {
    long up = directional_multiplicity(phi, x, Direction::infinity());
    if (up < 1 || up > m) throw MultiplicityMismatch("directional stretch " + std::to_string(up) +
                                                     " exceeds local degree " + std::to_string(m) + " at " + x.str());
  }
  return m;
}

CheckResult check_multiplicities(const RationalMap& phi, const std::vector<PullbackLevel>& levels, bool corrupt) {
  CheckResult r{"multiplicity", true, ""};
  const long d = phi.degree();
  long sets = 0;
  for (std::size_t n = 0; n + 1 < levels.size() && r.ok; ++n) {
    for (const auto& [target, w] : levels[n].measure.atoms()) {
      auto pre = preimages(phi, target);
      long reported = 0, oracle = 0;
      bool first = true;
      for (const auto& wp : pre) {
        long m = multiplicity_oracle(phi, wp.point);
        if (corrupt && first) ++m;
        first = false;
        reported += wp.multiplicity;
        oracle += m;
        if (m != wp.multiplicity) {
          r.ok = false;
          r.detail = "oracle multiplicity " + std::to_string(m) + " differs from " +
                     std::to_string(wp.multiplicity) + " at " + wp.point.str();
        }
      }
      ++sets;
      if (reported != d || oracle != d) {
        r.ok = false;
        r.detail = "multiplicities over preimages of " + target.str() + " sum to " + std::to_string(oracle) +
                   ", expected " + std::to_string(d);
      }
      if (!r.ok) break;
    }
  }
  if (r.ok) r.detail = std::to_string(sets) + " preimage sets";
  return r;
}

CheckResult check_lemma43_random(const RationalMap& phi, long samples, std::mt19937_64& rng) {
  std::vector<BerkPoint> xs;
  for (long i = 0; i < samples; ++i) xs.push_back(random_type_ii(rng, phi.prime()));
  auto rep = verify_lemma43(phi, xs);
  return {"lemma43", rep.ok, "min slack " + to_string(rep.min_slack) + " over " + std::to_string(samples)};
}

CheckResult check_lipschitz(const RationalMap& phi, long pairs, std::mt19937_64& rng) {
  const long p = phi.prime();
  const Rational lip = lipschitz_log_bound(phi);
  long violations = 0, checked = 0;
  for (long i = 0; i < pairs; ++i) {
    BerkPoint x = random_type_i(rng, p);
    BerkPoint y = random_type_i(rng, p);
    if (x == y) y = BerkPoint::type_i(x.is_infinity() ? Rational(0) : x.center() + 1, p);
    LogValue before = spherical_log_distance(x, y);
    LogValue after = spherical_log_distance(phi.eval(x), phi.eval(y));
    ++checked;
    if (after > before + LogValue(lip)) ++violations;
  }
  return {"lipschitz", violations == 0,
          std::to_string(violations) + " violations in " + std::to_string(checked) + " pairs"};
}

CheckResult check_equidistribution(const RationalMap& phi, const std::vector<PullbackLevel>& levels, long points,
                                   long n_max, std::mt19937_64& rng) {
  const long d = phi.degree();
  const Rational g1 = g1_sup(phi, BerkPoint::gauss(phi.prime()));
  CheckResult r{"equidistribution", true, ""};
  Rational worst(0);
  for (long n = 0; n <= n_max; ++n) {
    const Rational bound = equi_rate_bound(d, g1, n);
    Rational lo, hi;
    for (long i = 0; i < points; ++i) {
      BerkPoint a = (i % 2 == 0) ? random_type_i(rng, phi.prime()) : random_type_ii(rng, phi.prime());
      Rational defect = equi_defect(levels, a, n, n + 1);
      if (i == 0 || defect < lo) lo = defect;
      if (i == 0 || defect > hi) hi = defect;
      if (defect > bound) {
        r.ok = false;
        r.detail = fail_detail("defect " + to_string(defect) + " above " + to_string(bound) + " for " + a.str(), n);
        return r;
      }
    }
    worst = std::max(worst, Rational(hi - lo));
  }
  r.detail = "max spread over test points " + to_string(worst);
  return r;
}

CheckResult check_invariance(const RationalMap& phi, const std::vector<Mobius>& gens, long n_max, long budget) {
  CheckResult r{"invariance", true, ""};
  for (const auto& g : gens) {
    auto rep = verify_invariance(phi, g, n_max, budget);
    if (!rep.ok) {
      for (const auto& row : rep.rows) {
        if (!(row.measures_equal && row.prime_ok && row.sharp_ok && row.cancellation_ok)) {
          r.ok = false;
          r.detail = fail_detail("conjugation by " + g.str(), row.n);
          return r;
        }
      }
    }
  }
  r.detail = std::to_string(gens.size()) + " generators";
  return r;
}

MapSuiteResult run_map_suite(const CorpusEntry& entry, const SuiteOptions& opts) {
  const RationalMap& phi = entry.map;
  const long p = phi.prime();
  const long d = phi.degree();
  const BerkPoint g = BerkPoint::gauss(p);
  MapSuiteResult res;
  res.name = entry.name;
  res.map = phi.str();
  res.p = p;
  ReducedMap red = reduction(phi);
  res.bad_reduction = !red.good_reduction;
  std::mt19937_64 rng(opts.seed);

  auto levels = nu_levels(phi, g, opts.n_max, opts.budget);
  const Rational lip = lipschitz_log_bound(phi);
  const Rational g1 = g1_sup(phi, g);
  auto rows = lyap_estimates(phi, levels, lip, g1);

  CheckResult eq20{"eq20", true, ""}, prop45{"prop45", true, ""}, prop45g{"prop45_g1", true, ""};
  CheckResult bracket{"bracket", true, ""}, telescope{"telescope", true, ""}, lemma_lv{"lemma43_integrated", true, ""};
  for (const auto& row : rows) {
    if (row.eq20_ok && !*row.eq20_ok) eq20 = {"eq20", false, fail_detail("est " + to_string(row.est_prime), row.n)};
    if (row.prop45_ok && !*row.prop45_ok) prop45 = {"prop45", false, fail_detail("I_n " + to_string(*row.I_n), row.n)};
    if (row.prop45_g1_ok && !*row.prop45_g1_ok)
      prop45g = {"prop45_g1", false, fail_detail("I_n " + to_string(*row.I_n), row.n)};
    if (!row.bracket_ok) bracket = {"bracket", false, fail_detail("bracket", row.n)};
    if (!row.telescope_ok) telescope = {"telescope", false, fail_detail("distortion decomposition", row.n)};
    if (row.lemma_level_ok && !*row.lemma_level_ok) lemma_lv = {"lemma43_integrated", false, fail_detail("est", row.n)};
  }
  const Rational bound = kappa(d, phi.context()).value() - (d + 1) * lip;
  if (eq20.ok) eq20.detail = "bound " + to_string(bound) + ", last est " + to_string(rows.back().est_prime);
  res.checks = {eq20, prop45, prop45g, bracket, telescope, lemma_lv};

  if (red.good_reduction) {
    const Rational at_g = derivative_seminorm_log(phi, g).value();
    bool constant = std::all_of(rows.begin(), rows.end(), [&](const LevelRow& r) { return r.est_prime == at_g; });
    res.checks.push_back({"good_reduction_constant", constant, "derivative at Gauss " + to_string(at_g)});
  }

  res.checks.push_back(check_lemma43_random(phi, opts.type_ii_samples, rng));

  std::vector<Mobius> cands;
  for (const auto& s : entry.conjugates) cands.push_back(parse_mobius(s, p));
  auto t1 = verify_theorem1(phi, cands, opts.n_max, opts.budget);
  res.checks.push_back({"theorem1", t1.ok, "best bound " + to_string(t1.best_bound) + " via " + t1.best_gamma});

  auto t2 = verify_theorem2_hypotheses(phi, opts.n_max, opts.budget);
  res.checks.push_back({"theorem2", t2.verdict != Verdict::Fails, to_string(t2.verdict)});

  auto p49 = verify_prop49(phi, opts.n_max, opts.budget);
  res.checks.push_back({"prop49", p49.verdict != Verdict::Fails, to_string(p49.verdict)});

  std::vector<Mobius> gens = {Mobius::translation(Rational(1)), Mobius::scaling(Rational(p)), Mobius::inversion()};
  res.checks.push_back(check_invariance(phi, gens, std::min(opts.invariance_levels, opts.n_max), opts.budget));
  res.checks.push_back(
      check_equidistribution(phi, levels, opts.equi_points, std::min(opts.equi_levels, opts.n_max - 1), rng));
  res.checks.push_back(check_lipschitz(phi, opts.lipschitz_pairs, rng));
  res.checks.push_back(check_multiplicities(phi, levels, opts.corrupt_multiplicity_oracle));
  return res;
}

}  // namespace berk
