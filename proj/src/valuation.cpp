#include "berk/valuation.hpp"

#include <algorithm>

#include "berk/errors.hpp"

namespace berk {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

FieldContext::FieldContext(long p, long precision_digits)
    : prime(p), precision(precision_digits), log_base(p) {
  if (!is_prime(p)) throw InvalidArgument("prime expected, got " + std::to_string(p));
  if (precision_digits < 1) throw InvalidArgument("precision must be at least 1");
}

LogValue valuation(const Rational& x, const FieldContext& ctx) {
  if (x == 0) return LogValue::pos_inf();
  return LogValue(vp(x, ctx.prime));
}

LogValue log_abs(const Rational& x, long p) {
  if (x == 0) return LogValue::neg_inf();
  return LogValue(-vp(x, p));
}

LogValue log_abs(const Rational& x, const FieldContext& ctx) { return log_abs(x, ctx.prime); }

LogValue kappa(long d, const FieldContext& ctx) {
  if (d < 2) throw InvalidArgument("kappa needs d >= 2");
  long best = 0;
  for (long m = 1; m <= d; ++m) best = std::max(best, vp(Integer(m), ctx.prime));
  return LogValue(-best);
}

NewtonPolygon newton_polygon(const Poly& poly, long p) {
  if (poly.is_zero()) throw InvalidArgument("Newton polygon of the zero polynomial");
  struct Pt {
    long x;
    Rational y;
  };
  std::vector<Pt> pts;
  for (long i = 0; i <= poly.degree(); ++i) {
    const Rational c = poly.coeff(i);
    if (c != 0) pts.push_back({i, Rational(vp(c, p))});
  }
  // Lower convex hull (monotone chain).
  std::vector<Pt> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // Drop b if it lies on or above segment a-q.
      Rational lhs = (b.y - a.y) * (q.x - a.x);
      Rational rhs = (q.y - a.y) * (b.x - a.x);
      if (lhs >= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(q);
  }
  NewtonPolygon np;
  np.lowest_index = pts.front().x;
  np.degree = pts.back().x;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    long len = hull[i + 1].x - hull[i].x;
    Rational s = (hull[i + 1].y - hull[i].y) / Rational(len);
    s.canonicalize();
    np.segments.push_back({s, len});
  }
  return np;
}

NewtonPolygon newton_polygon(const std::vector<Rational>& coeffs, const FieldContext& ctx) {
  return newton_polygon(Poly(coeffs), ctx.prime);
}

long root_count_in_disc(const Poly& poly, const Rational& center, const Rational& log_radius,
                        long p, DiscKind kind) {
  if (poly.is_zero()) throw InvalidArgument("root count of the zero polynomial");
  NewtonPolygon np = newton_polygon(poly.taylor_shift(center), p);
  long count = np.lowest_index;
  for (const auto& s : np.segments) {
    bool inside = kind == DiscKind::Closed ? s.slope <= log_radius : s.slope < log_radius;
    if (inside) count += s.length;
  }
  return count;
}

long root_count_in_disc(const std::vector<Rational>& coeffs, const Rational& center,
                        const Rational& log_radius, const FieldContext& ctx, DiscKind kind) {
  return root_count_in_disc(Poly(coeffs), center, log_radius, ctx.prime, kind);
}

long PadicApprox::absolute_precision(long p) const {
  if (approx == 0) return known_precision;
  return vp(approx, p) + known_precision;
}

Rational padic_truncate(const Rational& x, long k, long p) {
  if (x == 0) return Rational(0);
  long v = vp(x, p);
  if (v >= k) return Rational(0);
  long e = std::max(0L, -v);
  // y = x p^e lies in Z_(p); reduce it modulo p^(k+e).
  Rational y = x * pow_p(p, e);
  Integer mod = pow_p(p, k + e).get_num();
  Integer den_inv;
  Integer den = y.get_den();
  if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw InternalError("non-invertible denominator in truncation");
  }
  Integer r = (y.get_num() * den_inv) % mod;
  if (r < 0) r += mod;
  Rational out = Rational(r) / pow_p(p, e);
  out.canonicalize();
  return out;
}

namespace {

using IntPoly = std::vector<Integer>;

Integer eval_mod(const IntPoly& f, const Integer& x, const Integer& mod) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = (acc * x + *it) % mod;
  }
  if (acc < 0) acc += mod;
  return acc;
}

IntPoly derivative(const IntPoly& f) {
  IntPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  return d;
}

// Makes a rational polynomial integral and primitive at p.
IntPoly to_primitive(const Poly& q, long p) {
  Integer l = 1;
  for (const auto& c : q.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  for (const auto& c : q.coeffs()) out.push_back(Rational(c * l).get_num());
  long m = -1;
  for (const auto& c : out) {
    if (c == 0) continue;
    long v = vp(c, p);
    m = (m < 0) ? v : std::min(m, v);
  }
  Integer div = pow_p(p, m).get_num();
  for (auto& c : out) c /= div;
  return out;
}

struct Lifted {
  Integer value;  // in [0, p^prec)
  long prec;
};

class RootFinder {
 public:
  RootFinder(long p, long precision) : p_(p), precision_(precision) {}

  std::vector<Lifted> roots(const IntPoly& f, long target, long depth, bool skip_zero) {
    if (depth > precision_) {
      throw InsufficientPrecision("root clusters not separated within the working precision");
    }
    std::vector<Lifted> out;
    Integer P = p_;
    IntPoly df = derivative(f);
    for (long r = skip_zero ? 1 : 0; r < p_; ++r) {
      if (eval_mod(f, r, P) != 0) continue;
      if (eval_mod(df, r, P) != 0) {
        out.push_back({lift(f, df, Integer(r), target), target});
        continue;
      }
      // Multiple residue: recurse on f(r + pW) / p^c.
      Poly shifted;
      {
        std::vector<Rational> rc;
        for (const auto& c : f) rc.emplace_back(c);
        shifted = Poly(rc).taylor_shift(Rational(r)).scale_variable(Rational(p_));
      }
      if (shifted.is_zero()) continue;
      IntPoly g = to_primitive(shifted, p_);
      for (const auto& w : roots(g, target - 1, depth + 1, false)) {
        Integer val = Integer(r) + P * w.value;
        out.push_back({val, w.prec + 1});
      }
    }
    return out;
  }

 private:
  Integer lift(const IntPoly& f, const IntPoly& df, Integer x, long target) {
    Integer mod = pow_p(p_, std::max(1L, target)).get_num();
    for (int it = 0; it < 200; ++it) {
      Integer fx = eval_mod(f, x, mod);
      if (fx == 0) break;
      Integer dfx = eval_mod(df, x, mod);
      Integer inv;
      if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), mod.get_mpz_t()) == 0) {
        throw InternalError("Hensel derivative not invertible");
      }
      x = (x - fx * inv) % mod;
      if (x < 0) x += mod;
    }
    return x;
  }

  long p_;
  long precision_;
};

// Finds n/d = u mod m with |n|, |d| small, if one exists.
bool rational_reconstruct(const Integer& u, const Integer& m, Rational& out) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = u % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

}  // namespace

std::vector<HenselRoot> hensel_roots(const std::vector<Rational>& coeffs, const FieldContext& ctx) {
  Poly poly(coeffs);
  if (poly.is_zero()) throw InvalidArgument("roots of the zero polynomial");
  const long p = ctx.prime;
  std::vector<HenselRoot> out;
  long m0 = poly.lowest_index();
  if (m0 > 0) {
    out.push_back({PadicApprox{Rational(0), ctx.precision, true}, m0});
    std::vector<Rational> rest(poly.coeffs().begin() + m0, poly.coeffs().end());
    poly = Poly(rest);
  }
  auto parts = squarefree_decomposition(poly);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const Poly& q = parts[k];
    if (q.degree() <= 0) continue;
    NewtonPolygon np = newton_polygon(q, p);
    for (const auto& seg : np.segments) {
      if (!is_integer(seg.slope)) {
        throw RequiresExtension("root of absolute value p^" + to_string(seg.slope) +
                                " lies in a ramified extension");
      }
      long v = -to_long(seg.slope.get_num());
      IntPoly r = to_primitive(q.scale_variable(pow_p(p, v)), p);
      RootFinder finder(p, ctx.precision);
      auto units = finder.roots(r, ctx.precision, 0, true);
      if (static_cast<long>(units.size()) != seg.length) {
        throw RequiresExtension("only " + std::to_string(units.size()) + " of " +
                                std::to_string(seg.length) + " roots of valuation " +
                                std::to_string(v) + " lie in Q_p");
      }
      for (const auto& u : units) {
        Integer mod = pow_p(p, u.prec).get_num();
        Rational approx = Rational(u.value) * pow_p(p, v);
        approx.canonicalize();
        PadicApprox pa{approx, u.prec, false};
        Rational rec;
        if (rational_reconstruct(u.value, mod, rec)) {
          Rational cand = rec * pow_p(p, v);
          cand.canonicalize();
          if (q.eval(cand) == 0) pa = PadicApprox{cand, ctx.precision, true};
        }
        out.push_back({pa, static_cast<long>(k)});
      }
    }
  }
  return out;
}

}  // namespace berk
