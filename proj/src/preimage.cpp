#include "berk/preimage.hpp"

#include <atomic>
#include <set>

#include "berk/errors.hpp"

namespace berk {

namespace {

std::atomic<long> g_calls{0};
std::atomic<long> g_mult_failures{0};
std::atomic<long> g_ext_failures{0};

constexpr int kMaxDepth = 4000;

// Records disc points Disc(c, u), lo < u < hi, mapping to zeta.
void edge_crossings(const RationalMap& phi, const Rational& c, const Rational& lo, const Rational& hi,
                    const BerkPoint& zeta, std::set<BerkPoint>& found) {
  const long p = phi.prime();
  std::vector<Rational> cuts{lo};
  for (const auto& b : image_breakpoints(phi, c, lo, hi)) cuts.push_back(b);
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational& u0 = cuts[i];
    const Rational& u1 = cuts[i + 1];
    BerkPoint i0 = apply(phi, BerkPoint::disc(c, u0, p));
    BerkPoint i1 = apply(phi, BerkPoint::disc(c, u1, p));
    Rational r01 = rho(i0, i1).value();
    if (r01 == 0) continue;
    Rational a = rho(i0, zeta).value();
    Rational b = rho(zeta, i1).value();
    if (a + b != r01) continue;
    Rational u = u0 + a * (u1 - u0) / r01;
    if (!(u > lo && u < hi)) continue;
    BerkPoint cand = BerkPoint::disc(c, u, p);
    if (apply(phi, cand) == zeta) found.insert(cand);
  }
}

// Whether zeta lies in the image of the closed Berkovich disc of D.
bool closed_image_contains(const RationalMap& phi, const BerkPoint& D, const BerkPoint& zeta) {
  const long p = phi.prime();
  BerkPoint img = apply(phi, D);
  if (img == zeta) return true;
  const Rational& a = D.center();
  const Rational& k = D.log_radius();
  Rational room(1);
  for (const auto& b : image_breakpoints(phi, a, k, k + 1)) room = std::min(room, Rational(b - k));
  BerkPoint up = apply(phi, BerkPoint::disc(a, k + room / 2, p));
  BerkPoint y = img.below(up) ? BerkPoint::infinity(p) : BerkPoint::type_i(up.center(), p);
  Poly h = y.is_infinity() ? phi.denominator() : phi.numerator() - y.center() * phi.denominator();
  if (root_count_in_disc(h, a, k, p, DiscKind::Closed) > 0) return true;
  return !same_direction(img, up, zeta);
}

void visit(const RationalMap& phi, const BerkPoint& V, const BerkPoint& zeta, std::set<BerkPoint>& found,
           int depth) {
  if (depth > kMaxDepth) throw InternalError("preimage search exceeded its depth limit");
  const long p = phi.prime();
  if (apply(phi, V) == zeta) found.insert(V);
  const Rational& k = V.log_radius();
  Rational step = pow_p(p, -to_long(k.get_num()));
  for (long j = 0; j < p; ++j) {
    Rational c = V.center() + j * step;
    edge_crossings(phi, c, k - 1, k, zeta, found);
    BerkPoint child = BerkPoint::disc(c, k - 1, p);
    if (closed_image_contains(phi, child, zeta)) visit(phi, child, zeta, found, depth + 1);
  }
}

}  // namespace

WeightedPreimageSet preimages(const RationalMap& phi, const BerkPoint& target) {
  ++g_calls;
  if (!target.is_disc()) throw InvalidArgument("preimages need a disc target");
  const long p = phi.prime();
  const BerkPoint gauss = BerkPoint::gauss(p);
  std::set<BerkPoint> found;
  visit(phi, gauss, target, found, 0);
  // The open disc around infinity, in the coordinate w = 1/z.
  const Mobius inv = Mobius::inversion();
  const RationalMap psi = compose(phi, inv.to_map(phi.context()));
  std::set<BerkPoint> outer;
  edge_crossings(psi, Rational(0), Rational(-1), Rational(0), target, outer);
  BerkPoint w0 = BerkPoint::disc(Rational(0), Rational(-1), p);
  if (closed_image_contains(psi, w0, target)) visit(psi, w0, target, outer, 1);
  for (const auto& x : outer) found.insert(mobius_apply(inv, x));

  WeightedPreimageSet out;
  long total = 0;
  for (const auto& x : found) {
    long m = multiplicity(phi, x);
    out.push_back({x, m});
    total += m;
  }
  if (total > phi.degree()) {
    ++g_mult_failures;
    throw MultiplicityMismatch("preimage multiplicities sum to " + std::to_string(total) +
                               " for a map of degree " + std::to_string(phi.degree()));
  }
  if (total < phi.degree()) {
    ++g_ext_failures;
    throw RequiresExtension("preimages of " + target.str() + " outside Q_p (found multiplicity " +
                            std::to_string(total) + " of " + std::to_string(phi.degree()) + ")");
  }
  return out;
}

PreimageStats preimage_stats() { return {g_calls.load(), g_mult_failures.load(), g_ext_failures.load()}; }

void reset_preimage_stats() {
  g_calls = 0;
  g_mult_failures = 0;
  g_ext_failures = 0;
}

DiscreteMeasure pullback_measure(const RationalMap& phi, const DiscreteMeasure& mu) {
  DiscreteMeasure out;
  for (const auto& [x, w] : mu.atoms()) {
    for (const auto& pre : preimages(phi, x)) out.add(pre.point, w * pre.multiplicity);
  }
  return out;
}

DiscreteMeasure pushforward_measure(const RationalMap& phi, const DiscreteMeasure& mu) {
  DiscreteMeasure out;
  for (const auto& [x, w] : mu.atoms()) out.add(apply(phi, x), w);
  return out;
}

std::vector<PullbackLevel> nu_levels(const RationalMap& phi, const BerkPoint& base, long n_max, long budget) {
  if (n_max < 0) throw InvalidArgument("level count must be nonnegative");
  if (budget < 1) throw InvalidArgument("budget must be positive");
  std::vector<PullbackLevel> levels{{0, DiscreteMeasure::dirac(base)}};
  long atoms = 1;
  const Rational inv_d(1, phi.degree());
  for (long n = 1; n <= n_max; ++n) {
    const DiscreteMeasure& prev = levels.back().measure;
    DiscreteMeasure next = pullback_measure(phi, prev).scaled(inv_d);
    atoms += static_cast<long>(next.size());
    if (atoms > budget) {
      throw BudgetExceeded("atom budget " + std::to_string(budget) + " exceeded at level " + std::to_string(n));
    }
    if (next.total_mass() != 1) throw InternalError("pullback level does not have unit mass");
    if (!(pushforward_measure(phi, next) == prev)) {
      throw InternalError("push-forward of level " + std::to_string(n) + " differs from level " +
                          std::to_string(n - 1));
    }
    levels.push_back({n, std::move(next)});
  }
  return levels;
}

PullbackLevel nu(const RationalMap& phi, const BerkPoint& base, long n, long budget) {
  return nu_levels(phi, base, n, budget).back();
}

std::vector<Rational> g1_values(const RationalMap& phi, const BerkPoint& base,
                                const std::vector<BerkPoint>& queries) {
  auto pre = preimages(phi, base);
  std::vector<Rational> out;
  for (const auto& z : queries) {
    Rational s(0);
    for (const auto& [zi, m] : pre) s += m * potential_kernel(z, zi, base).value();
    out.push_back(s / phi.degree());
  }
  return out;
}

Rational g1_sup(const RationalMap& phi, const BerkPoint& base) {
  auto pre = preimages(phi, base);
  std::vector<BerkPoint> pts;
  for (const auto& w : pre) pts.push_back(w.point);
  Rational best(0);
  for (const auto& v : g1_values(phi, base, pts)) best = std::max(best, v);
  return best;
}

Rational equi_defect(const std::vector<PullbackLevel>& levels, const BerkPoint& a, long n, long m) {
  if (n < 0 || m <= n || m >= static_cast<long>(levels.size())) throw InvalidArgument("bad level pair");
  const BerkPoint g = BerkPoint::gauss(a.prime());
  auto f = [&](const BerkPoint& x) { return hsia_log(x, a, g); };
  Rational v = integrate(f, levels[static_cast<std::size_t>(n)].measure - levels[static_cast<std::size_t>(m)].measure);
  return abs(v);
}

Rational equi_defect(const RationalMap& phi, const BerkPoint& base, const BerkPoint& a, long n, long m,
                     long budget) {
  return equi_defect(nu_levels(phi, base, m, budget), a, n, m);
}

Rational equi_rate_bound(long d, const Rational& g1sup, long n) {
  if (d < 2) throw InvalidArgument("rate bound needs degree at least 2");
  Rational b = 2 * (2 * d * g1sup / (d - 1));
  return b / pow_p(d, n);
}

}  // namespace berk
