#pragma once

#include <map>
#include <optional>
#include <string>

#include "berk/rational.hpp"
#include "berk/valuation.hpp"

namespace berk {

// A point of the Berkovich line over C_p with Q_p-rational data: a classical point
// (finite or infinity) or the disc point Disc(center, t) of radius p^t.
// Disc centers are stored in canonical form: the p-adic expansion truncated below
// the radius, so two discs are equal exactly when they are structurally equal.
class BerkPoint {
 public:
  enum class Kind { TypeI, Infinity, Disc };

  static BerkPoint type_i(const Rational& a, long p);
  static BerkPoint infinity(long p);
  static BerkPoint disc(const Rational& center, const Rational& log_radius, long p);
  static BerkPoint gauss(long p) { return disc(Rational(0), Rational(0), p); }

  Kind kind() const { return kind_; }
  bool is_type_i() const { return kind_ != Kind::Disc; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  bool is_disc() const { return kind_ == Kind::Disc; }
  /// Disc with radius in the value group of Q_p.
  bool is_type_ii() const { return is_disc() && is_integer(radius_); }
  long prime() const { return p_; }

  /// Coordinate of a finite type I point or center of a disc.
  const Rational& center() const;
  const Rational& log_radius() const;
  /// Disc radius; -inf for finite type I, +inf for infinity.
  LogValue height() const;

  /// x <= y in the partial order rooted at infinity (x lies in the closed disc of y).
  bool below(const BerkPoint& y) const;

  std::string str() const;

  friend bool operator==(const BerkPoint& a, const BerkPoint& b);
  friend bool operator<(const BerkPoint& a, const BerkPoint& b);

 private:
  BerkPoint(Kind k, Rational c, Rational t, long p)
      : kind_(k), center_(std::move(c)), radius_(std::move(t)), p_(p) {}
  Kind kind_;
  Rational center_;
  Rational radius_;
  long p_;
};

/// Disc(a, t) == Disc(b, s) iff t == s and v_p(a - b) >= -t.
bool same_disc(const Rational& a, const Rational& t, const Rational& b, const Rational& s, long p);

// Tangent direction at a base point, named by a witness or as the direction of infinity.
struct Direction {
  bool toward_infinity = false;
  std::optional<BerkPoint> witness;

  static Direction infinity() { return Direction{true, std::nullopt}; }
  static Direction toward(const BerkPoint& w) { return Direction{false, w}; }
};

BerkPoint join_infinity(const BerkPoint& x, const BerkPoint& y);
BerkPoint join(const BerkPoint& x, const BerkPoint& y, const BerkPoint& base);
LogValue log_diam_infinity(const BerkPoint& x);
/// Big metric; +inf when either point is type I.
LogValue rho(const BerkPoint& x, const BerkPoint& y);
/// log_v of the chordal distance between type I points.
LogValue spherical_log_distance(const BerkPoint& x, const BerkPoint& y);
LogValue potential_kernel(const BerkPoint& x, const BerkPoint& y, const BerkPoint& base);
LogValue hsia_log(const BerkPoint& x, const BerkPoint& y, const BerkPoint& anchor);
/// The change-of-anchor expression, valid for every anchor.
LogValue hsia_log_general(const BerkPoint& x, const BerkPoint& y, const BerkPoint& anchor);
LogValue log_diam_rel(const BerkPoint& x, const BerkPoint& anchor);

/// True when x and y lie in the same tangent direction at base (both different from base).
bool same_direction(const BerkPoint& base, const BerkPoint& x, const BerkPoint& y);
/// True when point x lies in direction dir at base.
bool in_direction(const BerkPoint& base, const Direction& dir, const BerkPoint& x);
/// Points in a direction at a disc either lie below it or in the direction of infinity.
bool is_downward(const BerkPoint& base, const Direction& dir);

// Finite sum of terms coeff * p^exponent.
struct PowerSum {
  long p = 2;
  std::map<Rational, Rational> terms;

  void add(const Rational& exponent, const Rational& coeff);
  bool is_zero() const { return terms.empty(); }
  /// Exact value when every exponent is an integer.
  std::optional<Rational> rational_value() const;
  std::string str() const;
  friend bool operator==(const PowerSum& a, const PowerSum& b) { return a.terms == b.terms; }
};

PowerSum small_metric(const BerkPoint& x, const BerkPoint& y);

}  // namespace berk
