#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berk/point.hpp"
#include "berk/poly.hpp"
#include "berk/valuation.hpp"

namespace berk {

class Mobius;

// phi = f / g with gcd(f, g) = 1, stored with the leading coefficient of g equal to 1.
class RationalMap {
 public:
  RationalMap(Poly f, Poly g, FieldContext ctx);

  static RationalMap identity(const FieldContext& ctx);

  const Poly& numerator() const { return f_; }
  const Poly& denominator() const { return g_; }
  long degree() const { return d_; }
  const FieldContext& context() const { return ctx_; }
  long prime() const { return ctx_.prime; }

  /// phi(x) for exact x; infinity at poles.
  BerkPoint eval(const BerkPoint& x) const;
  /// The numerator and denominator of phi' = (f'g - fg') / g^2.
  Poly derivative_numerator() const;

  std::string str() const;

  friend bool operator==(const RationalMap& a, const RationalMap& b);

 private:
  Poly f_, g_;
  long d_;
  FieldContext ctx_;
};

// z -> (a z + b) / (c z + d).
class Mobius {
 public:
  Mobius(Rational a, Rational b, Rational c, Rational d);
  static Mobius identity() { return Mobius(1, 0, 0, 1); }
  static Mobius translation(const Rational& a) { return Mobius(1, a, 0, 1); }
  static Mobius scaling(const Rational& a) { return Mobius(a, 0, 0, 1); }
  static Mobius inversion() { return Mobius(0, 1, 1, 0); }

  Mobius inverse() const;
  RationalMap to_map(const FieldContext& ctx) const;
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }
  std::string str() const;

 private:
  Rational a_, b_, c_, d_;
};

/// phi o psi.
RationalMap compose(const RationalMap& phi, const RationalMap& psi);
/// gamma^{-1} o phi o gamma.
RationalMap conjugate(const RationalMap& phi, const Mobius& gamma);

LogValue seminorm_log(const Poly& poly, const BerkPoint& pt);
LogValue map_seminorm_log(const RationalMap& phi, const BerkPoint& pt);

BerkPoint apply(const RationalMap& phi, const BerkPoint& pt);
/// Image of a disc through a pole-free center; empty when no such center is found
/// among the scanned residue classes in either coordinate.
std::optional<BerkPoint> apply_recentered(const RationalMap& phi, const BerkPoint& pt);
BerkPoint mobius_apply(const Mobius& gamma, const BerkPoint& pt);

LogValue derivative_seminorm_log(const RationalMap& phi, const BerkPoint& pt);
LogValue spherical_derivative_log(const RationalMap& phi, const BerkPoint& pt);
Rational distortion(const RationalMap& phi, const BerkPoint& pt);

/// Log radii in (lo, hi) at which t -> apply(phi, Disc(center, t)) may change its affine form.
std::vector<Rational> image_breakpoints(const RationalMap& phi, const Rational& center,
                                        const Rational& lo, const Rational& hi);

/// Local stretch factor of phi along the direction dir at the disc pt.
long directional_multiplicity(const RationalMap& phi, const BerkPoint& pt, const Direction& dir);
/// Local degree of phi at pt.
long multiplicity(const RationalMap& phi, const BerkPoint& pt);
/// Extra preimages in the open ball of dir beyond the directional multiplicity.
long surplus_multiplicity(const RationalMap& phi, const BerkPoint& pt, const Direction& dir);

/// Number of solutions of phi(z) = y (y finite or infinity), with multiplicity, lying in the
/// open ball of direction dir at the disc pt.
long preimage_count_in_direction(const RationalMap& phi, const BerkPoint& y, const BerkPoint& pt,
                                 const Direction& dir);

/// 2 v_p(Res) of the normalized homogeneous lift.
Rational lipschitz_log_bound(const RationalMap& phi);

}  // namespace berk
