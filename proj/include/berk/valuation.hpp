#pragma once

#include <vector>

#include "berk/poly.hpp"
#include "berk/rational.hpp"

namespace berk {

// Prime, working p-adic precision and the log base q_v (the residue characteristic).
struct FieldContext {
  long prime;
  long precision;
  long log_base;

  explicit FieldContext(long p, long precision_digits = 40);
};

bool is_prime(long n);

/// v_p(x); +inf for x = 0.
LogValue valuation(const Rational& x, const FieldContext& ctx);
/// log_v |x|_v = -v_p(x); -inf for x = 0.
LogValue log_abs(const Rational& x, const FieldContext& ctx);
LogValue log_abs(const Rational& x, long p);

/// min over 1 <= m <= d of log_v |m|_v.
LogValue kappa(long d, const FieldContext& ctx);

struct NewtonSegment {
  /// Equals log_v |root| for each root attached to the segment.
  Rational slope;
  long length;
};

struct NewtonPolygon {
  std::vector<NewtonSegment> segments;
  long lowest_index = 0;
  long degree = 0;
};

NewtonPolygon newton_polygon(const std::vector<Rational>& coeffs, const FieldContext& ctx);
NewtonPolygon newton_polygon(const Poly& p, long prime);

enum class DiscKind { Closed, Open };

/// Roots (with multiplicity, over an algebraic closure) in D(center, p^log_radius) or its open variant.
long root_count_in_disc(const std::vector<Rational>& coeffs, const Rational& center,
                        const Rational& log_radius, const FieldContext& ctx,
                        DiscKind kind = DiscKind::Closed);
long root_count_in_disc(const Poly& p, const Rational& center, const Rational& log_radius,
                        long prime, DiscKind kind = DiscKind::Closed);

// A p-adic number known modulo p^(v + known_precision), v its valuation.
struct PadicApprox {
  Rational approx;
  long known_precision = 0;
  bool exact = false;

  /// Exponent k such that the value is known modulo p^k.
  long absolute_precision(long p) const;
};

struct HenselRoot {
  PadicApprox root;
  long multiplicity = 1;
};

/// All roots in Q_p of a nonzero polynomial, each lifted to ctx.precision digits.
std::vector<HenselRoot> hensel_roots(const std::vector<Rational>& coeffs, const FieldContext& ctx);

/// The representative of x modulo p^k Z_p with digits only below k (zero if v_p(x) >= k).
Rational padic_truncate(const Rational& x, long k, long p);

}  // namespace berk
