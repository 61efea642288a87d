#include "berk/reduction.hpp"

#include <algorithm>

#include "berk/errors.hpp"
#include "berk/rmap.hpp"

namespace berk {

namespace fp {

long inverse(long a, long p) {
  long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw InternalError("residue not invertible");
  return ((t % p) + p) % p;
}

long reduce(const Rational& x, long p) {
  if (x.get_den() % p == 0) throw InternalError("reduction of a non-integral element");
  Integer P(p);
  Integer n = x.get_num() % P;
  Integer d = x.get_den() % P;
  long nl = n.get_si(), dl = d.get_si();
  nl = ((nl % p) + p) % p;
  return (nl * inverse(dl, p)) % p;
}

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }

Poly sub(const Poly& a, const Poly& b, long p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    long x = i < a.size() ? a[i] : 0;
    long y = i < b.size() ? b[i] : 0;
    r[i] = ((x - y) % p + p) % p;
  }
  return trim(r);
}

Poly mul_scalar(const Poly& a, long s, long p) {
  Poly r = a;
  for (auto& x : r) x = (x * (((s % p) + p) % p)) % p;
  return trim(r);
}

Poly derivative(const Poly& a, long p) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back((a[i] * static_cast<long>(i % p)) % p);
  return trim(r);
}

Poly mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return trim(r);
}

void divmod(const Poly& a, const Poly& b, long p, Poly& q, Poly& r) {
  if (b.empty()) throw InternalError("division by zero over F_p");
  r = trim(a);
  long db = degree(b);
  long inv = inverse(b.back(), p);
  q.assign(static_cast<std::size_t>(std::max(0L, degree(r) - db + 1)), 0);
  while (!r.empty() && degree(r) >= db) {
    long k = degree(r) - db;
    long c = (r.back() * inv) % p;
    q[static_cast<std::size_t>(k)] = c;
    for (long j = 0; j <= db; ++j) {
      auto& x = r[static_cast<std::size_t>(k + j)];
      x = ((x - c * b[static_cast<std::size_t>(j)]) % p + p) % p;
    }
    r = trim(r);
  }
  q = trim(q);
}

Poly gcd(const Poly& a, const Poly& b, long p) {
  Poly x = trim(a), y = trim(b);
  while (!y.empty()) {
    Poly q, r;
    divmod(x, y, p, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return x;
  return mul_scalar(x, inverse(x.back(), p), p);
}

long eval(const Poly& a, long x, long p) {
  long acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (acc * x + *it) % p;
  return acc;
}

long order_at(const Poly& a, long x, long p) {
  Poly cur = trim(a);
  if (cur.empty()) throw InternalError("order of the zero polynomial");
  Poly lin{((-x) % p + p) % p, 1};
  long k = 0;
  while (true) {
    Poly q, r;
    divmod(cur, lin, p, q, r);
    if (!r.empty()) return k;
    cur = q;
    ++k;
  }
}

}  // namespace fp

namespace {

// Reduces a list of coefficients scaled to minimum valuation zero.
std::vector<Rational> normalize(const std::vector<Rational>& cs, long p) {
  long m = 0;
  bool first = true;
  for (const auto& c : cs) {
    if (c == 0) continue;
    long v = vp(c, p);
    if (first || v < m) m = v;
    first = false;
  }
  Rational s = pow_p(p, -m);
  std::vector<Rational> out;
  for (const auto& c : cs) out.push_back(c * s);
  return out;
}

fp::Poly reduce_all(const std::vector<Rational>& cs, long p) {
  fp::Poly out;
  for (const auto& c : cs) out.push_back(fp::reduce(c, p));
  return fp::trim(out);
}

// Reduction of sum c_i (pi X)^i with |pi| = p^t, normalized by its dominant term.
fp::Poly scaled_reduction(const Poly& shifted, const Rational& t, long p) {
  LogValue best = LogValue::neg_inf();
  for (long i = 0; i <= shifted.degree(); ++i) {
    const Rational c = shifted.coeff(i);
    if (c == 0) continue;
    LogValue val = LogValue(Rational(-vp(c, p) + i * t));
    best = max(best, val);
  }
  long i0 = -1;
  fp::Poly out(static_cast<std::size_t>(shifted.degree() + 1), 0);
  for (long i = 0; i <= shifted.degree(); ++i) {
    const Rational c = shifted.coeff(i);
    if (c == 0) continue;
    if (LogValue(Rational(-vp(c, p) + i * t)) != best) continue;
    if (i0 < 0) {
      i0 = i;
      out[static_cast<std::size_t>(i)] = 1;
      continue;
    }
    Rational e = (i - i0) * t;
    if (!is_integer(e)) throw InternalError("non-integral exponent in local reduction");
    Rational ratio = c / shifted.coeff(i0) * pow_p(p, -to_long(e.get_num()));
    out[static_cast<std::size_t>(i)] = fp::reduce(ratio, p);
  }
  return fp::trim(out);
}

}  // namespace

ReducedMap reduction(const RationalMap& phi) {
  const long p = phi.prime();
  const long d = phi.degree();
  std::vector<Rational> all;
  for (long i = 0; i <= d; ++i) all.push_back(phi.numerator().coeff(i));
  for (long i = 0; i <= d; ++i) all.push_back(phi.denominator().coeff(i));
  all = normalize(all, p);
  std::vector<Rational> fc(all.begin(), all.begin() + d + 1), gc(all.begin() + d + 1, all.end());
  fp::Poly F = reduce_all(fc, p), G = reduce_all(gc, p);
  ReducedMap out;
  out.p = p;
  if (F.empty() || G.empty()) {
    out.numerator = F;
    out.denominator = G.empty() ? fp::Poly{} : fp::Poly{1};
    if (F.empty()) out.numerator = {};
    out.degree = 0;
    out.good_reduction = false;
    out.separable = false;
    return out;
  }
  fp::Poly h = fp::gcd(F, G, p);
  fp::Poly q, r;
  fp::divmod(F, h, p, q, r);
  out.numerator = q;
  fp::divmod(G, h, p, q, r);
  out.denominator = q;
  long at_infinity = std::min(d - fp::degree(F), d - fp::degree(G));
  out.degree = d - fp::degree(h) - at_infinity;
  out.good_reduction = out.degree == d;
  fp::Poly w = fp::sub(fp::mul(fp::derivative(out.numerator, p), out.denominator, p),
                       fp::mul(out.numerator, fp::derivative(out.denominator, p), p), p);
  out.separable = !w.empty();
  return out;
}

LocalReduction local_reduction(const RationalMap& phi, const BerkPoint& pt) {
  if (!pt.is_disc()) throw InvalidArgument("local reduction needs a disc point");
  const long p = phi.prime();
  BerkPoint img = apply(phi, pt);
  if (!img.is_disc()) throw InternalError("image of a disc is not a disc");
  const Rational& a = pt.center();
  const Rational& t = pt.log_radius();
  Poly h = phi.numerator() - img.center() * phi.denominator();
  fp::Poly N = scaled_reduction(h.taylor_shift(a), t, p);
  fp::Poly D = scaled_reduction(phi.denominator().taylor_shift(a), t, p);
  LocalReduction lr;
  lr.p = p;
  lr.d = phi.degree();
  lr.log_radius = t;
  lr.common = fp::gcd(N, D, p);
  fp::Poly q, r;
  fp::divmod(N, lr.common, p, q, r);
  lr.numerator = q;
  fp::divmod(D, lr.common, p, q, r);
  lr.denominator = q;
  lr.degree = std::max(fp::degree(lr.numerator), fp::degree(lr.denominator));
  return lr;
}

namespace {

long local_degree_finite(const fp::Poly& N, const fp::Poly& D, long x, long p) {
  long dv = fp::eval(D, x, p);
  if (dv == 0) return fp::order_at(D, x, p);
  long val = (fp::eval(N, x, p) * fp::inverse(dv, p)) % p;
  return fp::order_at(fp::sub(N, fp::mul_scalar(D, val, p), p), x, p);
}

fp::Poly reverse(const fp::Poly& a, long n) {
  fp::Poly r(static_cast<std::size_t>(n + 1), 0);
  for (long i = 0; i <= fp::degree(a); ++i) r[static_cast<std::size_t>(n - i)] = a[static_cast<std::size_t>(i)];
  return fp::trim(r);
}

}  // namespace

long local_degree(const LocalReduction& lr, std::optional<long> residue) {
  if (residue) return local_degree_finite(lr.numerator, lr.denominator, *residue, lr.p);
  return local_degree_finite(reverse(lr.numerator, lr.degree), reverse(lr.denominator, lr.degree), 0, lr.p);
}

long local_surplus(const LocalReduction& lr, std::optional<long> residue) {
  if (residue) {
    if (fp::eval(lr.common, *residue, lr.p) != 0) return 0;
    return fp::order_at(lr.common, *residue, lr.p);
  }
  return lr.d - lr.degree - fp::degree(lr.common);
}

std::optional<long> residue_of(const BerkPoint& pt, const Rational& c) {
  const long p = pt.prime();
  const Rational& t = pt.log_radius();
  Rational diff = c - pt.center();
  if (diff != 0 && Rational(vp(diff, p)) < -t) throw InvalidArgument("point not below the disc");
  if (!is_integer(t)) {
    if (diff == 0 || Rational(vp(diff, p)) > -t) return 0;
    return std::nullopt;
  }
  return fp::reduce(diff * pow_p(p, to_long(t.get_num())), p);
}

}  // namespace berk
