#pragma once

#include <functional>
#include <map>
#include <vector>

#include "berk/point.hpp"

namespace berk {

// Finite signed measure: atoms kept sorted, merged, and free of zero weights.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  static DiscreteMeasure dirac(const BerkPoint& x, const Rational& w = Rational(1));

  void add(const BerkPoint& x, const Rational& w);
  void add(const DiscreteMeasure& other, const Rational& scale = Rational(1));
  DiscreteMeasure scaled(const Rational& s) const;

  Rational total_mass() const;
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  /// Weight at x (zero if x is not an atom).
  Rational weight(const BerkPoint& x) const;
  const std::map<BerkPoint, Rational>& atoms() const { return atoms_; }

  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) { return a.atoms_ == b.atoms_; }
  friend DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b);
  friend DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b);

 private:
  std::map<BerkPoint, Rational> atoms_;
};

/// Sum of weight * f(atom); throws if f is infinite at an atom.
Rational integrate(const std::function<LogValue(const BerkPoint&)>& f, const DiscreteMeasure& mu);

}  // namespace berk
