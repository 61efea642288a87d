#pragma once

#include <random>
#include <string>
#include <vector>

#include "berk/rmap.hpp"

namespace berk::test {

inline Rational R(const char* s) { return parse_rational(s); }
inline Rational R(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}
inline Rational R(int n) { return Rational(n); }

inline Poly P(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return Poly(v);
}

inline RationalMap M(std::initializer_list<long> f, std::initializer_list<long> g, long p) {
  return RationalMap(P(f), P(g), FieldContext(p));
}

inline BerkPoint G(long p) { return BerkPoint::gauss(p); }
inline BerkPoint D(const Rational& c, const Rational& t, long p) { return BerkPoint::disc(c, t, p); }
inline BerkPoint I(const Rational& a, long p) { return BerkPoint::type_i(a, p); }

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational random_rational(std::mt19937_64& rng, long p) {
  long num = uniform(rng, -200, 200);
  long den = uniform(rng, 1, 12);
  return R(num, den) * pow_p(p, uniform(rng, -2, 2));
}

inline Poly random_poly(std::mt19937_64& rng, long p, long max_degree) {
  std::vector<Rational> cs;
  long deg = uniform(rng, 0, max_degree);
  for (long i = 0; i <= deg; ++i) cs.push_back(random_rational(rng, p));
  if (cs.back() == 0) cs.back() = 1;
  return Poly(cs);
}

inline long random_prime(std::mt19937_64& rng) {
  const long ps[] = {2, 3, 5, 7};
  return ps[uniform(rng, 0, 3)];
}

}  // namespace berk::test
