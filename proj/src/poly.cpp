#include "berk/poly.hpp"

#include <utility>

#include "berk/errors.hpp"

namespace berk {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(const Rational& c, long k) {
  std::vector<Rational> v(static_cast<std::size_t>(k + 1));
  v.back() = c;
  return Poly(std::move(v));
}

Rational Poly::coeff(long i) const {
  if (i < 0 || i > degree()) return Rational(0);
  return c_[static_cast<std::size_t>(i)];
}

long Poly::lowest_index() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) return static_cast<long>(i);
  }
  return -1;
}

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(v));
}

Poly Poly::taylor_shift(const Rational& a) const {
  std::vector<Rational> v = c_;
  const std::size_t n = v.size();
  if (a == 0 || n <= 1) return *this;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) v[j - 1] += a * v[j];
  }
  return Poly(std::move(v));
}

Poly Poly::compose(const Poly& q) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + Poly::constant(*it);
  return acc;
}

Poly Poly::scale_variable(const Rational& c) const {
  std::vector<Rational> v = c_;
  Rational pw(1);
  for (auto& x : v) {
    x *= pw;
    pw *= c;
  }
  return Poly(std::move(v));
}

Poly Poly::reversed(long n) const {
  if (n < degree()) throw InvalidArgument("reversal degree below polynomial degree");
  std::vector<Rational> v(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= degree(); ++i) v[static_cast<std::size_t>(n - i)] = c_[static_cast<std::size_t>(i)];
  return Poly(std::move(v));
}

Poly Poly::pow(long e) const {
  Poly r = Poly::constant(1), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / lead();
  return inv * *this;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] += a.c_[i];
    if (i < b.c_.size()) v[i] += b.c_[i];
  }
  return Poly(std::move(v));
}

Poly Poly::operator-() const {
  std::vector<Rational> v = c_;
  for (auto& x : v) x = -x;
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(v));
}

Poly operator*(const Rational& s, const Poly& a) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x *= s;
  return Poly(std::move(v));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  long db = b.degree();
  long da = a.degree();
  std::vector<Rational> quo(static_cast<std::size_t>(std::max(0L, da - db + 1)));
  for (long k = da; k >= db; --k) {
    const Rational& top = rem[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    Rational c = top / b.lead();
    quo[static_cast<std::size_t>(k - db)] = c;
    for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.c_[static_cast<std::size_t>(j)];
  }
  q = Poly(std::move(quo));
  r = Poly(std::move(rem));
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<Poly> squarefree_decomposition(const Poly& p) {
  // Yun's algorithm.
  std::vector<Poly> out{Poly()};
  if (p.degree() <= 0) return out;
  Poly dp = p.derivative();
  Poly a = Poly::gcd(p, dp);
  Poly q, r;
  Poly::divmod(p, a, q, r);
  Poly b = q;
  Poly::divmod(dp, a, q, r);
  Poly c = q;
  Poly d = c - b.derivative();
  while (b.degree() > 0) {
    Poly g = Poly::gcd(b, d);
    out.push_back(g);
    Poly::divmod(b, g, q, r);
    b = q;
    Poly::divmod(d, g, q, r);
    c = q;
    d = c - b.derivative();
  }
  return out;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

Rational homogeneous_resultant(const Poly& f, const Poly& g, long n) {
  if (n <= 0) throw InvalidArgument("resultant needs positive degree");
  const std::size_t N = static_cast<std::size_t>(2 * n);
  std::vector<std::vector<Rational>> m(N, std::vector<Rational>(N));
  // Rows hold coefficients from X^n down to Y^n, shifted.
  for (long r = 0; r < n; ++r) {
    for (long i = 0; i <= n; ++i) {
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = f.coeff(n - i);
      m[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = g.coeff(n - i);
    }
  }
  return determinant(std::move(m));
}

}  // namespace berk
