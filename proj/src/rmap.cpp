#include "berk/rmap.hpp"

#include <algorithm>
#include <set>

#include "berk/errors.hpp"
#include "berk/reduction.hpp"

namespace berk {

namespace {

long poly_degree_or_zero(const Poly& p) { return std::max(0L, p.degree()); }

}  // namespace

RationalMap::RationalMap(Poly f, Poly g, FieldContext ctx) : ctx_(ctx) {
  if (g.is_zero()) throw InvalidArgument("denominator is zero");
  Poly h = Poly::gcd(f, g);
  if (h.degree() > 0) {
    throw InvalidArgument("numerator and denominator share a common factor");
  }
  Rational s = 1 / g.lead();
  f_ = s * f;
  g_ = s * g;
  d_ = std::max(poly_degree_or_zero(f_), poly_degree_or_zero(g_));
  if (d_ < 1) throw InvalidArgument("constant maps are not supported");
}

RationalMap RationalMap::identity(const FieldContext& ctx) {
  return RationalMap(Poly::t(), Poly::constant(1), ctx);
}

BerkPoint RationalMap::eval(const BerkPoint& x) const {
  const long p = ctx_.prime;
  if (x.is_infinity()) {
    if (f_.degree() > g_.degree()) return BerkPoint::infinity(p);
    if (f_.degree() == g_.degree()) return BerkPoint::type_i(f_.lead() / g_.lead(), p);
    return BerkPoint::type_i(Rational(0), p);
  }
  if (!x.is_type_i()) throw InvalidArgument("eval expects a type I point");
  Rational gv = g_.eval(x.center());
  if (gv == 0) return BerkPoint::infinity(p);
  return BerkPoint::type_i(f_.eval(x.center()) / gv, p);
}

Poly RationalMap::derivative_numerator() const {
  return f_.derivative() * g_ - f_ * g_.derivative();
}

std::string RationalMap::str() const {
  auto ps = [](const Poly& q) {
    std::string s = "[";
    for (long i = 0; i <= q.degree(); ++i) {
      if (i) s += ",";
      s += to_string(q.coeff(i));
    }
    return s + "]";
  };
  return "(" + ps(f_) + ")/(" + ps(g_) + ") over Q_" + std::to_string(ctx_.prime);
}

bool operator==(const RationalMap& a, const RationalMap& b) {
  return a.ctx_.prime == b.ctx_.prime && a.f_ == b.f_ && a.g_ == b.g_;
}

Mobius::Mobius(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ == 0) throw InvalidArgument("singular Mobius transformation");
}

Mobius Mobius::inverse() const { return Mobius(d_, -b_, -c_, a_); }

RationalMap Mobius::to_map(const FieldContext& ctx) const {
  return RationalMap(Poly({b_, a_}), Poly({d_, c_}), ctx);
}

std::string Mobius::str() const {
  return "(" + to_string(a_) + "*z+" + to_string(b_) + ")/(" + to_string(c_) + "*z+" + to_string(d_) + ")";
}

namespace {

RationalMap reduced_map(const Poly& f, const Poly& g, const FieldContext& ctx) {
  Poly h = Poly::gcd(f, g);
  Poly q1, r1, q2, r2;
  Poly::divmod(f, h, q1, r1);
  Poly::divmod(g, h, q2, r2);
  return RationalMap(q1, q2, ctx);
}

}  // namespace

RationalMap compose(const RationalMap& phi, const RationalMap& psi) {
  const long d = phi.degree();
  const Poly& u = psi.numerator();
  const Poly& v = psi.denominator();
  std::vector<Poly> upow{Poly::constant(1)}, vpow{Poly::constant(1)};
  for (long i = 1; i <= d; ++i) {
    upow.push_back(upow.back() * u);
    vpow.push_back(vpow.back() * v);
  }
  Poly num, den;
  for (long i = 0; i <= d; ++i) {
    Poly term = upow[static_cast<std::size_t>(i)] * vpow[static_cast<std::size_t>(d - i)];
    num = num + phi.numerator().coeff(i) * term;
    den = den + phi.denominator().coeff(i) * term;
  }
  return reduced_map(num, den, phi.context());
}

RationalMap conjugate(const RationalMap& phi, const Mobius& gamma) {
  const auto& ctx = phi.context();
  return compose(gamma.inverse().to_map(ctx), compose(phi, gamma.to_map(ctx)));
}

LogValue seminorm_log(const Poly& poly, const BerkPoint& pt) {
  const long p = pt.prime();
  if (pt.is_infinity()) throw InvalidArgument("seminorm at infinity");
  if (pt.is_type_i()) return log_abs(poly.eval(pt.center()), p);
  Poly s = poly.taylor_shift(pt.center());
  LogValue best = LogValue::neg_inf();
  for (long i = 0; i <= s.degree(); ++i) {
    const Rational c = s.coeff(i);
    if (c == 0) continue;
    best = max(best, LogValue(Rational(-vp(c, p) + i * pt.log_radius())));
  }
  return best;
}

LogValue map_seminorm_log(const RationalMap& phi, const BerkPoint& pt) {
  if (pt.is_type_i()) {
    BerkPoint y = phi.eval(pt);
    if (y.is_infinity()) return LogValue::pos_inf();
    return log_abs(y.center(), pt.prime());
  }
  return seminorm_log(phi.numerator(), pt) - seminorm_log(phi.denominator(), pt);
}

namespace {

struct Line {
  Rational intercept;
  long slope;
  Rational at(const Rational& u) const { return intercept + slope * u; }
};

std::vector<Line> lines_of(const Poly& shifted, long p) {
  std::vector<Line> out;
  for (long i = 0; i <= shifted.degree(); ++i) {
    const Rational c = shifted.coeff(i);
    if (c != 0) out.push_back({Rational(-vp(c, p)), i});
  }
  return out;
}

Rational envelope(const std::vector<Line>& ls, const Rational& u, long* arg = nullptr) {
  Rational best;
  long idx = -1;
  for (const auto& l : ls) {
    Rational v = l.at(u);
    if (idx < 0 || v > best) {
      best = v;
      idx = l.slope;
    }
  }
  if (arg) *arg = idx;
  return best;
}

void add_crossings(const std::vector<Line>& ls, const Rational& lo, const Rational& hi,
                   std::set<Rational>& out) {
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      Rational u = (ls[i].intercept - ls[j].intercept) / Rational(ls[j].slope - ls[i].slope);
      u.canonicalize();
      if (u > lo && u < hi) out.insert(u);
    }
  }
}

}  // namespace

BerkPoint apply(const RationalMap& phi, const BerkPoint& pt) {
  if (pt.is_type_i()) return phi.eval(pt);
  const long p = phi.prime();
  const Rational& a = pt.center();
  const Rational& t = pt.log_radius();
  Poly fs = phi.numerator().taylor_shift(a);
  Poly gs = phi.denominator().taylor_shift(a);
  long j = -1;
  Rational gmax = envelope(lines_of(gs, p), t, &j);
  Rational beta = fs.coeff(j) / gs.coeff(j);
  Poly h = fs - beta * gs;
  Rational hmax = envelope(lines_of(h, p), t);
  return BerkPoint::disc(beta, hmax - gmax, p);
}

namespace {

std::optional<BerkPoint> recentered_image(const Poly& f, const Poly& g, const BerkPoint& pt) {
  const long p = pt.prime();
  const Rational& a = pt.center();
  const Rational& t = pt.log_radius();
  Rational step = pow_p(p, to_long(ceil(-t)));
  for (long c = 0; c <= p; ++c) {
    Rational a2 = a + c * step;
    if (root_count_in_disc(g, a2, t, p, DiscKind::Open) > 0) continue;
    Rational b = f.eval(a2) / g.eval(a2);
    LogValue r = seminorm_log(f - b * g, pt) - seminorm_log(g, pt);
    return BerkPoint::disc(b, r.value(), p);
  }
  return std::nullopt;
}

}  // namespace

std::optional<BerkPoint> apply_recentered(const RationalMap& phi, const BerkPoint& pt) {
  if (!pt.is_disc()) return phi.eval(pt);
  if (auto img = recentered_image(phi.numerator(), phi.denominator(), pt)) return img;
  if (auto inv = recentered_image(phi.denominator(), phi.numerator(), pt)) {
    return mobius_apply(Mobius::inversion(), *inv);
  }
  return std::nullopt;
}

BerkPoint mobius_apply(const Mobius& gamma, const BerkPoint& pt) {
  return apply(gamma.to_map(FieldContext(pt.prime())), pt);
}

LogValue derivative_seminorm_log(const RationalMap& phi, const BerkPoint& pt) {
  if (pt.is_infinity()) throw InvalidArgument("derivative seminorm at infinity");
  Poly n = phi.derivative_numerator();
  if (pt.is_type_i()) {
    Rational gv = phi.denominator().eval(pt.center());
    if (gv == 0) return LogValue::pos_inf();
    return log_abs(n.eval(pt.center()) / (gv * gv), pt.prime());
  }
  LogValue sg = seminorm_log(phi.denominator(), pt);
  return seminorm_log(n, pt) - sg - sg;
}

LogValue spherical_derivative_log(const RationalMap& phi, const BerkPoint& pt) {
  const FieldContext& ctx = phi.context();
  const RationalMap inv = Mobius::inversion().to_map(ctx);
  if (pt.is_infinity()) {
    // The inversion is an isometry of the chordal metric.
    return spherical_derivative_log(compose(phi, inv), BerkPoint::type_i(Rational(0), ctx.prime));
  }
  if (pt.is_type_i() && phi.eval(pt).is_infinity()) {
    return spherical_derivative_log(compose(inv, phi), pt);
  }
  LogValue t = seminorm_log(Poly::t(), pt);
  LogValue m = map_seminorm_log(phi, pt);
  LogValue zero(0);
  return derivative_seminorm_log(phi, pt) + LogValue(2 * max(zero, t).value()) -
         LogValue(2 * max(zero, m).value());
}

Rational distortion(const RationalMap& phi, const BerkPoint& pt) {
  if (!pt.is_disc()) throw InvalidArgument("distortion needs a point of H");
  return (log_diam_infinity(pt) + derivative_seminorm_log(phi, pt) - map_seminorm_log(phi, pt)).value();
}

std::vector<Rational> image_breakpoints(const RationalMap& phi, const Rational& center,
                                        const Rational& lo, const Rational& hi) {
  const long p = phi.prime();
  Poly fs = phi.numerator().taylor_shift(center);
  Poly gs = phi.denominator().taylor_shift(center);
  std::vector<Line> gl = lines_of(gs, p);
  std::set<Rational> pts;
  add_crossings(gl, lo, hi, pts);
  // Indices of g attaining its envelope somewhere in [lo, hi].
  std::vector<Rational> probes{lo, hi};
  {
    std::vector<Rational> cuts{lo};
    cuts.insert(cuts.end(), pts.begin(), pts.end());
    cuts.push_back(hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) probes.push_back((cuts[i] + cuts[i + 1]) / 2);
    probes.insert(probes.end(), pts.begin(), pts.end());
  }
  std::set<long> active;
  for (const auto& u : probes) {
    Rational m = envelope(gl, u);
    for (const auto& l : gl) {
      if (l.at(u) == m) active.insert(l.slope);
    }
  }
  for (long j : active) {
    Rational beta = fs.coeff(j) / gs.coeff(j);
    add_crossings(lines_of(fs - beta * gs, p), lo, hi, pts);
  }
  return {pts.begin(), pts.end()};
}

namespace {

// A point at log distance eps from pt along dir, with eps below every breakpoint.
struct Step {
  BerkPoint moved;
  Rational eps;
};

Step step_in_direction(const RationalMap& phi, const BerkPoint& pt, const Direction& dir) {
  const long p = pt.prime();
  const Rational& t = pt.log_radius();
  bool down = is_downward(pt, dir);
  Rational c = down ? dir.witness->center() : pt.center();
  Rational lo = down ? t - 1 : t;
  Rational hi = down ? t : t + 1;
  auto bps = image_breakpoints(phi, c, lo, hi);
  Rational room(1);
  for (const auto& b : bps) room = std::min(room, down ? Rational(t - b) : Rational(b - t));
  Rational eps = room / 2;
  Rational u = down ? Rational(t - eps) : Rational(t + eps);
  return {BerkPoint::disc(c, u, p), eps};
}

}  // namespace

long directional_multiplicity(const RationalMap& phi, const BerkPoint& pt, const Direction& dir) {
  if (!pt.is_disc()) throw InvalidArgument("directional multiplicity needs a disc point");
  Step s = step_in_direction(phi, pt, dir);
  Rational m = rho(apply(phi, s.moved), apply(phi, pt)).value() / s.eps;
  if (!is_integer(m) || m < 1) throw InternalError("non-integral stretch factor " + to_string(m));
  return to_long(m.get_num());
}

long multiplicity(const RationalMap& phi, const BerkPoint& pt) {
  const long p = phi.prime();
  if (pt.is_disc()) return local_reduction(phi, pt).degree;
  if (pt.is_infinity()) {
    const RationalMap inv = Mobius::inversion().to_map(phi.context());
    return multiplicity(compose(phi, inv), BerkPoint::type_i(Rational(0), p));
  }
  BerkPoint y = phi.eval(pt);
  Poly h = y.is_infinity() ? phi.denominator() : phi.numerator() - y.center() * phi.denominator();
  return h.taylor_shift(pt.center()).lowest_index();
}

long preimage_count_in_direction(const RationalMap& phi, const BerkPoint& y, const BerkPoint& pt,
                                 const Direction& dir) {
  const long p = pt.prime();
  const long d = phi.degree();
  Poly h = y.is_infinity() ? phi.denominator() : phi.numerator() - y.center() * phi.denominator();
  const Rational& t = pt.log_radius();
  if (is_downward(pt, dir)) {
    return root_count_in_disc(h, dir.witness->center(), t, p, DiscKind::Open);
  }
  return d - root_count_in_disc(h, pt.center(), t, p, DiscKind::Closed);
}

long surplus_multiplicity(const RationalMap& phi, const BerkPoint& pt, const Direction& dir) {
  if (!pt.is_disc()) throw InvalidArgument("surplus multiplicity needs a disc point");
  const long p = pt.prime();
  Step s = step_in_direction(phi, pt, dir);
  BerkPoint img = apply(phi, pt);
  Direction wdir = Direction::toward(apply(phi, s.moved));
  const Rational& b = img.center();
  long k0 = to_long(ceil(-img.log_radius()));
  std::vector<BerkPoint> pool{BerkPoint::infinity(p), BerkPoint::type_i(b, p)};
  for (long j = 1; j < p; ++j) pool.push_back(BerkPoint::type_i(b + j * pow_p(p, k0), p));
  for (long m = 1; m <= 3; ++m) {
    pool.push_back(BerkPoint::type_i(b + pow_p(p, k0 + m), p));
    pool.push_back(BerkPoint::type_i(b + pow_p(p, k0 - m), p));
  }
  std::vector<long> counts;
  for (const auto& y : pool) {
    if (in_direction(img, wdir, y)) continue;
    counts.push_back(preimage_count_in_direction(phi, y, pt, dir));
  }
  if (counts.size() < 3) throw InternalError("fewer than three targets outside the image ball");
  for (long c : counts) {
    if (c != counts.front()) throw InternalError("surplus counts disagree across targets");
  }
  return counts.front();
}

Rational lipschitz_log_bound(const RationalMap& phi) {
  const long p = phi.prime();
  const long d = phi.degree();
  std::vector<Rational> all;
  for (long i = 0; i <= d; ++i) all.push_back(phi.numerator().coeff(i));
  for (long i = 0; i <= d; ++i) all.push_back(phi.denominator().coeff(i));
  long m = 0;
  bool first = true;
  for (const auto& c : all) {
    if (c == 0) continue;
    long v = vp(c, p);
    if (first || v < m) m = v;
    first = false;
  }
  Rational s = pow_p(p, -m);
  Rational res = homogeneous_resultant(s * phi.numerator(), s * phi.denominator(), d);
  if (res == 0) throw InternalError("vanishing resultant");
  return Rational(2 * vp(res, p));
}

}  // namespace berk
