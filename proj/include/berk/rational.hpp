#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace berk {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "num/den" form with positive denominator; integers keep "/1".
std::string to_string(const Rational& x);

/// Accepts "num/den", "num", and an optional leading sign.
Rational parse_rational(std::string_view text);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// p^e as an exact rational; e may be negative.
Rational pow_p(long p, long e);

/// v_p of a nonzero integer / rational.
long vp(const Integer& x, long p);
long vp(const Rational& x, long p);

bool is_integer(const Rational& x);
long to_long(const Integer& x);

// Extended value in log_v units: a rational, or one of the two infinities.
class LogValue {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  LogValue() : kind_(Kind::Finite) {}
  LogValue(Rational value) : kind_(Kind::Finite), value_(std::move(value)) {}  // NOLINT
  LogValue(long value) : kind_(Kind::Finite), value_(value) {}                 // NOLINT

  static LogValue neg_inf() { return LogValue(Kind::NegInf); }
  static LogValue pos_inf() { return LogValue(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }

  /// Throws InternalError on an infinity.
  const Rational& value() const;

  LogValue operator-() const;
  friend LogValue operator+(const LogValue& a, const LogValue& b);
  friend LogValue operator-(const LogValue& a, const LogValue& b) { return a + (-b); }
  LogValue& operator+=(const LogValue& b) { return *this = *this + b; }

  friend bool operator==(const LogValue& a, const LogValue& b);
  friend std::strong_ordering operator<=>(const LogValue& a, const LogValue& b);

  std::string str() const;

 private:
  explicit LogValue(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

inline const LogValue& max(const LogValue& a, const LogValue& b) { return a < b ? b : a; }
inline const LogValue& min(const LogValue& a, const LogValue& b) { return b < a ? b : a; }

}  // namespace berk
