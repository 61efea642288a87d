#pragma once

#include <vector>

#include "berk/rational.hpp"

namespace berk {

// Dense univariate polynomial over Q, coefficients in ascending degree.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs) : Poly(std::vector<Rational>(coeffs)) {}

  static Poly constant(const Rational& c) { return Poly({c}); }
  static Poly monomial(const Rational& c, long k);
  /// The polynomial T.
  static Poly t() { return Poly({Rational(0), Rational(1)}); }

  /// Degree, or -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  /// Coefficient of T^i; zero beyond the degree.
  Rational coeff(long i) const;
  const Rational& lead() const { return c_.back(); }
  /// Index of the lowest nonzero coefficient; -1 for zero.
  long lowest_index() const;

  Rational eval(const Rational& x) const;
  Poly derivative() const;
  /// P(a + T).
  Poly taylor_shift(const Rational& a) const;
  /// P(q(T)).
  Poly compose(const Poly& q) const;
  /// P(c T).
  Poly scale_variable(const Rational& c) const;
  /// T^n P(1/T) for n >= degree.
  Poly reversed(long n) const;
  Poly pow(long e) const;
  Poly monic() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& a);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  /// Monic gcd over Q (zero if both are zero).
  static Poly gcd(const Poly& a, const Poly& b);

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Square-free decomposition over Q: returns factors P_k (index k = multiplicity), P = c * prod P_k^k.
std::vector<Poly> squarefree_decomposition(const Poly& p);

/// Exact determinant by fraction-free elimination.
Rational determinant(std::vector<std::vector<Rational>> m);

/// Resultant of the binary forms of degree n built from f and g (coefficients of X^i Y^{n-i}).
Rational homogeneous_resultant(const Poly& f, const Poly& g, long n);

}  // namespace berk
