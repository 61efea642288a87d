#include "berk/point.hpp"

#include "berk/errors.hpp"

namespace berk {

BerkPoint BerkPoint::type_i(const Rational& a, long p) {
  Rational c = a;
  c.canonicalize();
  return BerkPoint(Kind::TypeI, c, Rational(0), p);
}

BerkPoint BerkPoint::infinity(long p) { return BerkPoint(Kind::Infinity, Rational(0), Rational(0), p); }

BerkPoint BerkPoint::disc(const Rational& center, const Rational& log_radius, long p) {
  Rational t = log_radius;
  t.canonicalize();
  long k = to_long(ceil(-t));
  return BerkPoint(Kind::Disc, padic_truncate(center, k, p), t, p);
}

const Rational& BerkPoint::center() const {
  if (kind_ == Kind::Infinity) throw InvalidArgument("the point at infinity has no finite center");
  return center_;
}

const Rational& BerkPoint::log_radius() const {
  if (kind_ != Kind::Disc) throw InvalidArgument("log_radius of a type I point");
  return radius_;
}

LogValue BerkPoint::height() const {
  switch (kind_) {
    case Kind::TypeI: return LogValue::neg_inf();
    case Kind::Infinity: return LogValue::pos_inf();
    default: return LogValue(radius_);
  }
}

bool same_disc(const Rational& a, const Rational& t, const Rational& b, const Rational& s, long p) {
  if (t != s) return false;
  Rational diff = a - b;
  return diff == 0 || Rational(vp(diff, p)) >= -t;
}

namespace {

bool in_closed_disc(const Rational& x, const Rational& center, const Rational& t, long p) {
  Rational diff = x - center;
  return diff == 0 || Rational(vp(diff, p)) >= -t;
}

}  // namespace

bool BerkPoint::below(const BerkPoint& y) const {
  if (y.is_infinity()) return true;
  if (is_infinity()) return false;
  if (y.kind_ == Kind::TypeI) return kind_ == Kind::TypeI && center_ == y.center_;
  if (kind_ == Kind::Disc && radius_ > y.radius_) return false;
  return in_closed_disc(center_, y.center_, y.radius_, p_);
}

std::string BerkPoint::str() const {
  switch (kind_) {
    case Kind::TypeI: return "I(" + to_string(center_) + ")";
    case Kind::Infinity: return "I(inf)";
    default: return "D(" + to_string(center_) + "," + to_string(radius_) + ")";
  }
}

bool operator==(const BerkPoint& a, const BerkPoint& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == BerkPoint::Kind::Infinity) return true;
  if (a.kind_ == BerkPoint::Kind::TypeI) return a.center_ == b.center_;
  return a.radius_ == b.radius_ && a.center_ == b.center_;
}

bool operator<(const BerkPoint& a, const BerkPoint& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
  if (a.kind_ == BerkPoint::Kind::Infinity) return false;
  if (a.center_ != b.center_) return a.center_ < b.center_;
  return a.radius_ < b.radius_;
}

BerkPoint join_infinity(const BerkPoint& x, const BerkPoint& y) {
  if (x.is_infinity() || y.is_infinity()) {
    throw InvalidArgument("join relative to infinity of the point infinity");
  }
  const long p = x.prime();
  if (!x.is_disc() && !y.is_disc()) {
    if (x.center() == y.center()) return x;
    return BerkPoint::disc(x.center(), log_abs(x.center() - y.center(), p).value(), p);
  }
  LogValue t = max(max(log_abs(x.center() - y.center(), p), x.height()), y.height());
  return BerkPoint::disc(x.center(), t.value(), p);
}

namespace {

BerkPoint lca(const BerkPoint& x, const BerkPoint& y) {
  if (x.is_infinity()) return x;
  if (y.is_infinity()) return y;
  return join_infinity(x, y);
}

}  // namespace

BerkPoint join(const BerkPoint& x, const BerkPoint& y, const BerkPoint& base) {
  if (x == y && y == base && base.is_type_i()) {
    throw InvalidArgument("join of three equal type I points");
  }
  BerkPoint a = lca(x, y), b = lca(x, base), c = lca(y, base);
  BerkPoint best = a;
  if (b.height() < best.height()) best = b;
  if (c.height() < best.height()) best = c;
  return best;
}

LogValue log_diam_infinity(const BerkPoint& x) {
  if (x.is_infinity()) throw InvalidArgument("diameter of the point at infinity");
  return x.height();
}

LogValue rho(const BerkPoint& x, const BerkPoint& y) {
  if (x.is_type_i() || y.is_type_i()) return LogValue::pos_inf();
  BerkPoint j = join_infinity(x, y);
  return LogValue(Rational(2 * j.log_radius() - x.log_radius() - y.log_radius()));
}

LogValue spherical_log_distance(const BerkPoint& x, const BerkPoint& y) {
  if (!x.is_type_i() || !y.is_type_i()) throw InvalidArgument("spherical distance needs type I points");
  const long p = x.prime();
  if (x.is_infinity() && y.is_infinity()) return LogValue::neg_inf();
  auto lift_norm = [p](const BerkPoint& z) { return max(LogValue(0), log_abs(z.center(), p)); };
  if (x.is_infinity()) return -lift_norm(y);
  if (y.is_infinity()) return -lift_norm(x);
  LogValue diff = log_abs(x.center() - y.center(), p);
  if (diff.is_neg_inf()) return diff;
  return diff - lift_norm(x) - lift_norm(y);
}

LogValue potential_kernel(const BerkPoint& x, const BerkPoint& y, const BerkPoint& base) {
  if (!base.is_disc()) throw InvalidArgument("potential kernel needs a base point in H");
  BerkPoint w = join(x, y, base);
  if (w.is_type_i()) return LogValue::pos_inf();
  return rho(w, base);
}

LogValue hsia_log_general(const BerkPoint& x, const BerkPoint& y, const BerkPoint& anchor) {
  if (anchor.is_type_i() && (x == anchor || y == anchor)) {
    throw InvalidArgument("Hsia kernel evaluated at its type I anchor");
  }
  const BerkPoint g = BerkPoint::gauss(x.prime());
  return -potential_kernel(x, y, g) + potential_kernel(x, anchor, g) + potential_kernel(y, anchor, g);
}

LogValue hsia_log(const BerkPoint& x, const BerkPoint& y, const BerkPoint& anchor) {
  if (anchor.is_infinity()) {
    if (x.is_infinity() || y.is_infinity()) {
      throw InvalidArgument("Hsia kernel evaluated at its type I anchor");
    }
    return join_infinity(x, y).height();
  }
  return hsia_log_general(x, y, anchor);
}

LogValue log_diam_rel(const BerkPoint& x, const BerkPoint& anchor) { return hsia_log(x, x, anchor); }

bool same_direction(const BerkPoint& base, const BerkPoint& x, const BerkPoint& y) {
  if (x == base || y == base) return false;
  return !(join(x, y, base) == base);
}

bool in_direction(const BerkPoint& base, const Direction& dir, const BerkPoint& x) {
  if (dir.toward_infinity) return same_direction(base, BerkPoint::infinity(base.prime()), x);
  return same_direction(base, *dir.witness, x);
}

bool is_downward(const BerkPoint& base, const Direction& dir) {
  if (dir.toward_infinity) return false;
  const BerkPoint& w = *dir.witness;
  if (w == base) throw InvalidArgument("direction witness equals the base point");
  return w.below(base);
}

void PowerSum::add(const Rational& exponent, const Rational& coeff) {
  if (coeff == 0) return;
  Rational& c = terms[exponent];
  c += coeff;
  if (c == 0) terms.erase(exponent);
}

std::optional<Rational> PowerSum::rational_value() const {
  Rational sum(0);
  for (const auto& [e, c] : terms) {
    if (!is_integer(e)) return std::nullopt;
    sum += c * pow_p(p, to_long(e.get_num()));
  }
  return sum;
}

std::string PowerSum::str() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + "*" + std::to_string(p) + "^(" + to_string(e) + ")";
  }
  return out;
}

PowerSum small_metric(const BerkPoint& x, const BerkPoint& y) {
  const long p = x.prime();
  const BerkPoint g = BerkPoint::gauss(p);
  PowerSum out;
  out.p = p;
  auto add_term = [&](const BerkPoint& z, long coeff) {
    LogValue r = rho(z, g);
    if (r.is_finite()) out.add(-r.value(), Rational(coeff));
  };
  if (x == y) return out;
  add_term(join(x, y, g), 2);
  add_term(x, -1);
  add_term(y, -1);
  return out;
}

}  // namespace berk
