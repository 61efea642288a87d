#include "berk/rational.hpp"

#include <cctype>

#include "berk/errors.hpp"

namespace berk {

std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InvalidArgument("empty rational");
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits_ok = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  if (!digits_ok(num, true) || !digits_ok(den, false)) {
    throw InvalidArgument("malformed rational '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational pow_p(long p, long e) {
  Integer b;
  mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(b);
  Rational r(1, b);
  r.canonicalize();
  return r;
}

long vp(const Integer& x, long p) {
  if (x == 0) throw InvalidArgument("valuation of zero");
  Integer P(p);
  Integer tmp;
  return static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), P.get_mpz_t()));
}

long vp(const Rational& x, long p) {
  if (x == 0) throw InvalidArgument("valuation of zero");
  return vp(x.get_num(), p) - vp(x.get_den(), p);
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

long to_long(const Integer& x) {
  if (!x.fits_slong_p()) throw InvalidArgument("integer out of range");
  return x.get_si();
}

const Rational& LogValue::value() const {
  if (kind_ != Kind::Finite) throw InternalError("value() of infinite LogValue");
  return value_;
}

LogValue LogValue::operator-() const {
  switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    default: return LogValue(Rational(-value_));
  }
}

LogValue operator+(const LogValue& a, const LogValue& b) {
  using K = LogValue::Kind;
  if (a.kind_ == K::Finite && b.kind_ == K::Finite) return LogValue(Rational(a.value_ + b.value_));
  if ((a.kind_ == K::NegInf && b.kind_ == K::PosInf) ||
      (a.kind_ == K::PosInf && b.kind_ == K::NegInf)) {
    throw InternalError("indeterminate sum of infinities");
  }
  if (a.kind_ != K::Finite) return a;
  return b;
}

bool operator==(const LogValue& a, const LogValue& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != LogValue::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const LogValue& a, const LogValue& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (a.kind_ != LogValue::Kind::Finite) return std::strong_ordering::equal;
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string LogValue::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    default: return to_string(value_);
  }
}

}  // namespace berk
