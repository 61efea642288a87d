#pragma once

#include <optional>
#include <vector>

#include "berk/point.hpp"
#include "berk/rational.hpp"

namespace berk {

class RationalMap;

// Polynomials over F_p, ascending coefficients in [0, p), trimmed.
namespace fp {
using Poly = std::vector<long>;
long reduce(const Rational& x, long p);
Poly trim(Poly a);
long degree(const Poly& a);
Poly sub(const Poly& a, const Poly& b, long p);
Poly mul_scalar(const Poly& a, long s, long p);
Poly derivative(const Poly& a, long p);
Poly mul(const Poly& a, const Poly& b, long p);
void divmod(const Poly& a, const Poly& b, long p, Poly& q, Poly& r);
Poly gcd(const Poly& a, const Poly& b, long p);
long eval(const Poly& a, long x, long p);
long inverse(long a, long p);
/// Order of vanishing at x (a must be nonzero).
long order_at(const Poly& a, long x, long p);
}  // namespace fp

struct ReducedMap {
  long p = 2;
  fp::Poly numerator;
  fp::Poly denominator;
  long degree = 0;
  bool good_reduction = false;
  bool separable = false;
};

/// Reduction of the normalized lift modulo p, common factors cancelled.
ReducedMap reduction(const RationalMap& phi);

// Reduction of phi at a disc pt, in the coordinate X with z = center + pi X (|pi| = radius)
// and target coordinate centered at the image disc.
struct LocalReduction {
  long p = 2;
  long d = 0;
  Rational log_radius;
  fp::Poly numerator;    // after cancelling the common factor
  fp::Poly denominator;  // after cancelling the common factor
  fp::Poly common;
  long degree = 0;
};

LocalReduction local_reduction(const RationalMap& phi, const BerkPoint& pt);
/// Local degree of the reduced map at a residue (empty for the point at infinity).
long local_degree(const LocalReduction& lr, std::optional<long> residue);
/// Order of the cancelled factor at a residue (at infinity: the remaining surplus).
long local_surplus(const LocalReduction& lr, std::optional<long> residue);
/// Residue of the direction at the disc pt containing the finite point c, or empty when that
/// direction is not Q_p-rational below pt.
std::optional<long> residue_of(const BerkPoint& pt, const Rational& c);

}  // namespace berk
