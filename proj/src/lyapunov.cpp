#include "berk/lyapunov.hpp"

#include <algorithm>

#include "berk/errors.hpp"
#include "berk/reduction.hpp"

namespace berk {

namespace {

Rational kappa_of(const RationalMap& phi) { return kappa(phi.degree(), phi.context()).value(); }

Rational log_diam_of(const BerkPoint& x) { return log_diam_infinity(x).value(); }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Fails: return "fails";
    default: return "not_applicable";
  }
}

std::vector<LevelRow> lyap_estimates(const RationalMap& phi, const std::vector<PullbackLevel>& levels,
                                     const Rational& lipschitz, const std::optional<Rational>& g1sup) {
  const long d = phi.degree();
  const Rational k = kappa_of(phi);
  auto dprime = [&](const BerkPoint& x) { return derivative_seminorm_log(phi, x); };
  auto dsharp = [&](const BerkPoint& x) { return spherical_derivative_log(phi, x); };
  auto ldiam = [](const BerkPoint& x) { return log_diam_infinity(x); };
  std::vector<LevelRow> rows;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const DiscreteMeasure& mu = levels[n].measure;
    LevelRow r;
    r.n = static_cast<long>(n);
    r.est_prime = integrate(dprime, mu);
    r.est_sharp = integrate(dsharp, mu);
    if (n >= 1) {
      r.I_n = integrate(ldiam, levels[n - 1].measure - mu);
      r.eq20_ok = r.est_prime >= k - (d + 1) * lipschitz;
      r.prop45_ok = *r.I_n >= -(d + 1) * lipschitz;
      if (g1sup) r.prop45_g1_ok = *r.I_n >= -(d + 1) * *g1sup;
      r.lemma_level_ok = r.est_prime >= k + *r.I_n;
    }
    Rational sup_t(0), sup_phi(0);
    for (const auto& [x, w] : mu.atoms()) {
      sup_t = std::max(sup_t, seminorm_log(Poly::t(), x).value());
      sup_phi = std::max(sup_phi, map_seminorm_log(phi, x).value());
      Rational lhs = derivative_seminorm_log(phi, x).value();
      Rational rhs = distortion(phi, x) + map_seminorm_log(phi, x).value() - log_diam_of(x);
      if (lhs != rhs) r.telescope_ok = false;
    }
    r.bracket_ok = abs(r.est_prime - r.est_sharp) <= 2 * sup_t + 2 * sup_phi;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<LevelRow> lyap_estimates(const RationalMap& phi, const BerkPoint& base, long n_max, long budget) {
  auto levels = nu_levels(phi, base, n_max, budget);
  return lyap_estimates(phi, levels, lipschitz_log_bound(phi), g1_sup(phi, base));
}

Lemma43Report verify_lemma43(const RationalMap& phi, const std::vector<BerkPoint>& samples) {
  const Rational k = kappa_of(phi);
  Lemma43Report rep;
  for (const auto& x : samples) {
    if (!x.is_disc()) throw InvalidArgument("derivative bound samples must lie in H");
    Rational lhs = derivative_seminorm_log(phi, x).value();
    Rational rhs = k + log_diam_of(apply(phi, x)) - log_diam_of(x);
    Rational s = lhs - rhs;
    if (rep.slacks.empty() || s < rep.min_slack) rep.min_slack = s;
    if (s < 0) rep.ok = false;
    rep.slacks.push_back(s);
  }
  return rep;
}

Prop45Report verify_prop45(const RationalMap& phi, long n_max, long budget) {
  const long d = phi.degree();
  if (d < 2) throw InvalidArgument("the integral lower bound requires degree at least 2");
  const BerkPoint g = BerkPoint::gauss(phi.prime());
  auto levels = nu_levels(phi, g, n_max, budget);
  const Rational lip = lipschitz_log_bound(phi);
  const Rational g1 = g1_sup(phi, g);
  auto ldiam = [](const BerkPoint& x) { return log_diam_infinity(x); };
  Prop45Report rep;
  for (long n = 1; n <= n_max; ++n) {
    Prop45Row r;
    r.n = n;
    r.I_n = integrate(ldiam, levels[static_cast<std::size_t>(n - 1)].measure - levels[static_cast<std::size_t>(n)].measure);
    r.bound_lipschitz = -(d + 1) * lip;
    r.bound_g1 = -(d + 1) * g1;
    r.ok_lipschitz = r.I_n >= r.bound_lipschitz;
    r.ok_g1 = r.I_n >= r.bound_g1;
    rep.ok = rep.ok && r.ok_lipschitz && r.ok_g1;
    rep.rows.push_back(r);
  }
  return rep;
}

namespace {

Theorem2Report theorem2_from(const RationalMap& phi, const std::vector<PullbackLevel>& levels,
                             const std::vector<LevelRow>& rows) {
  Theorem2Report rep;
  rep.kappa = kappa_of(phi);
  rep.equality = true;
  bool all_ok = true;
  for (const auto& lv : levels) {
    Rational m;
    bool first = true;
    for (const auto& [x, w] : lv.measure.atoms()) {
      if (!x.is_disc()) all_ok = false;
      Rational h = log_diam_of(x);
      if (first || h < m) m = h;
      first = false;
    }
    rep.min_log_diam.push_back(m);
  }
  for (const auto& r : rows) {
    if (r.est_prime != rep.kappa) rep.equality = false;
    if (r.n >= 1) {
      rep.level_ok.push_back(*r.lemma_level_ok);
      all_ok = all_ok && *r.lemma_level_ok;
    }
  }
  rep.last_estimate = rows.back().est_prime;
  rep.last_correction = rows.back().I_n.value_or(Rational(0));
  const auto& md = rep.min_log_diam;
  // Diameters still shrinking without halving their decrement: no Cauchy tail bound.
  bool decaying = false;
  if (md.size() >= 3) {
    Rational last = md[md.size() - 2] - md[md.size() - 1];
    Rational prev = md[md.size() - 3] - md[md.size() - 2];
    decaying = last > 0 && 2 * last > prev;
  }
  if (!all_ok) {
    rep.verdict = Verdict::Fails;
  } else if (decaying) {
    rep.verdict = Verdict::Inconclusive;
  } else {
    rep.verdict = Verdict::Holds;
  }
  return rep;
}

}  // namespace

Theorem2Report verify_theorem2_hypotheses(const RationalMap& phi, long n_max, long budget) {
  auto levels = nu_levels(phi, BerkPoint::gauss(phi.prime()), n_max, budget);
  auto rows = lyap_estimates(phi, levels, lipschitz_log_bound(phi), std::nullopt);
  return theorem2_from(phi, levels, rows);
}

Theorem1Report verify_theorem1(const RationalMap& phi, const std::vector<Mobius>& candidates, long n_max,
                               long budget) {
  const long d = phi.degree();
  const Rational k = kappa_of(phi);
  const BerkPoint g = BerkPoint::gauss(phi.prime());
  std::vector<Mobius> cands{Mobius::identity()};
  for (const auto& c : candidates) {
    if (c.str() != Mobius::identity().str()) cands.push_back(c);
  }
  Theorem1Report rep;
  bool first = true;
  for (const auto& gamma : cands) {
    RationalMap psi = conjugate(phi, gamma);
    Theorem1Candidate c;
    c.gamma = gamma.str();
    c.lipschitz = lipschitz_log_bound(psi);
    c.bound = k - (d + 1) * c.lipschitz;
    auto rows = lyap_estimates(psi, g, n_max, budget);
    for (const auto& r : rows) {
      if (r.eq20_ok && !*r.eq20_ok) c.ok = false;
    }
    if (first) rep.own_estimate = rows.back().est_prime;
    if (first || c.bound > rep.best_bound) {
      rep.best_bound = c.bound;
      rep.best_gamma = c.gamma;
    }
    first = false;
    rep.ok = rep.ok && c.ok;
    rep.candidates.push_back(c);
  }
  rep.own_meets_best = rep.own_estimate >= rep.best_bound;
  return rep;
}

Prop49Report verify_prop49(const RationalMap& phi, long n_max, long budget) {
  Prop49Report rep;
  ReducedMap red = reduction(phi);
  rep.good_reduction = red.good_reduction;
  rep.separable = red.separable;
  rep.applicable = red.good_reduction && red.separable;
  const BerkPoint g = BerkPoint::gauss(phi.prime());
  rep.derivative_at_gauss = derivative_seminorm_log(phi, g).value();
  auto levels = nu_levels(phi, g, n_max, budget);
  auto dprime = [&](const BerkPoint& x) { return derivative_seminorm_log(phi, x); };
  for (const auto& lv : levels) rep.estimates.push_back(integrate(dprime, lv.measure));
  if (!rep.applicable) {
    rep.verdict = Verdict::NotApplicable;
    return rep;
  }
  bool ok = rep.derivative_at_gauss == 0;
  for (const auto& e : rep.estimates) ok = ok && e == 0;
  rep.verdict = ok ? Verdict::Holds : Verdict::Fails;
  return rep;
}

InvarianceReport verify_invariance(const RationalMap& phi, const Mobius& gamma, long n_max, long budget) {
  const FieldContext& ctx = phi.context();
  const long p = ctx.prime;
  const BerkPoint g = BerkPoint::gauss(p);
  const Mobius ginv = gamma.inverse();
  const RationalMap ginv_map = ginv.to_map(ctx);
  const RationalMap gamma_map = gamma.to_map(ctx);
  const RationalMap psi = conjugate(phi, gamma);
  const BerkPoint base2 = mobius_apply(ginv, g);
  auto lv_phi = nu_levels(phi, g, n_max, budget);
  auto lv_psi = nu_levels(psi, base2, n_max, budget);

  auto h = [&](const BerkPoint& y) { return derivative_seminorm_log(ginv_map, y); };
  auto hs = [&](const BerkPoint& y) { return spherical_derivative_log(ginv_map, y); };
  auto dphi = [&](const BerkPoint& y) { return derivative_seminorm_log(phi, y); };
  auto sphi = [&](const BerkPoint& y) { return spherical_derivative_log(phi, y); };
  auto dpsi = [&](const BerkPoint& y) { return derivative_seminorm_log(psi, y); };
  auto spsi = [&](const BerkPoint& y) { return spherical_derivative_log(psi, y); };

  InvarianceReport rep;
  for (long n = 0; n <= n_max; ++n) {
    const DiscreteMeasure& mu = lv_phi[static_cast<std::size_t>(n)].measure;
    const DiscreteMeasure& mu2 = lv_psi[static_cast<std::size_t>(n)].measure;
    InvarianceRow r;
    r.n = n;
    r.measures_equal = mu2 == pushforward_measure(ginv_map, mu);
    DiscreteMeasure diff = pushforward_measure(phi, mu) - mu;
    r.est_conjugate = integrate(dpsi, mu2);
    r.est_corrected = integrate(dphi, mu) + integrate(h, diff);
    r.prime_ok = r.est_conjugate == r.est_corrected;
    r.sharp_ok = integrate(spsi, mu2) == integrate(sphi, mu) + integrate(hs, diff);
    Rational cancel(0);
    for (const auto& [y, w] : mu.atoms()) {
      cancel += w * (h(y).value() + derivative_seminorm_log(gamma_map, mobius_apply(ginv, y)).value());
    }
    r.cancellation_ok = cancel == 0;
    rep.ok = rep.ok && r.measures_equal && r.prime_ok && r.sharp_ok && r.cancellation_ok;
    rep.rows.push_back(r);
  }
  return rep;
}

namespace {

std::vector<BerkPoint> default_samples(long p, const std::vector<PullbackLevel>& levels) {
  std::vector<BerkPoint> out;
  for (const auto& lv : levels) {
    for (const auto& [x, w] : lv.measure.atoms()) out.push_back(x);
  }
  const Rational centers[] = {Rational(0), Rational(1), Rational(-1), Rational(1, p), Rational(p)};
  const Rational radii[] = {Rational(-3), Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 3),
                            Rational(1), Rational(2)};
  for (const auto& c : centers) {
    for (const auto& t : radii) out.push_back(BerkPoint::disc(c, t, p));
  }
  return out;
}

}  // namespace

LyapunovReport analyze(const RationalMap& phi, const AnalysisOptions& opts) {
  const long p = phi.prime();
  const BerkPoint g = BerkPoint::gauss(p);
  LyapunovReport rep;
  rep.map = phi.str();
  rep.p = p;
  rep.d = phi.degree();
  if (rep.d < 2) throw InvalidArgument("analysis requires degree at least 2");
  rep.kappa = kappa_of(phi);
  rep.lipschitz_log = lipschitz_log_bound(phi);
  ReducedMap red = reduction(phi);
  rep.good_reduction = red.good_reduction;
  rep.separable = red.separable;
  auto levels = nu_levels(phi, g, opts.n_max, opts.budget);
  rep.g1_sup = g1_sup(phi, g);
  rep.g1_within_lipschitz = rep.g1_sup <= rep.lipschitz_log;
  rep.rows = lyap_estimates(phi, levels, rep.lipschitz_log, rep.g1_sup);
  rep.lemma43 = verify_lemma43(phi, default_samples(p, levels));
  rep.theorem1 = verify_theorem1(phi, opts.candidates, opts.n_max, opts.budget);
  rep.theorem2 = theorem2_from(phi, levels, rep.rows);
  rep.prop49 = verify_prop49(phi, opts.n_max, opts.budget);
  bool ok = rep.g1_within_lipschitz && rep.lemma43.ok && rep.theorem1.ok &&
            rep.theorem2.verdict != Verdict::Fails && rep.prop49.verdict != Verdict::Fails;
  for (const auto& r : rep.rows) {
    if (r.eq20_ok && !*r.eq20_ok) rep.eq20_ok = false;
    if ((r.prop45_ok && !*r.prop45_ok) || (r.prop45_g1_ok && !*r.prop45_g1_ok)) rep.prop45_ok = false;
    ok = ok && r.bracket_ok && r.telescope_ok && r.lemma_level_ok.value_or(true);
  }
  rep.ok = ok && rep.eq20_ok && rep.prop45_ok;
  return rep;
}

}  // namespace berk
