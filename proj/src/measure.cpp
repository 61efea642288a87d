#include "berk/measure.hpp"

#include "berk/errors.hpp"

namespace berk {

DiscreteMeasure DiscreteMeasure::dirac(const BerkPoint& x, const Rational& w) {
  DiscreteMeasure m;
  m.add(x, w);
  return m;
}

void DiscreteMeasure::add(const BerkPoint& x, const Rational& w) {
  if (w == 0) return;
  auto [it, inserted] = atoms_.try_emplace(x, w);
  if (!inserted) {
    it->second += w;
    if (it->second == 0) atoms_.erase(it);
  }
}

void DiscreteMeasure::add(const DiscreteMeasure& other, const Rational& scale) {
  for (const auto& [x, w] : other.atoms_) add(x, w * scale);
}

DiscreteMeasure DiscreteMeasure::scaled(const Rational& s) const {
  DiscreteMeasure m;
  m.add(*this, s);
  return m;
}

Rational DiscreteMeasure::total_mass() const {
  Rational s(0);
  for (const auto& [x, w] : atoms_) s += w;
  return s;
}

Rational DiscreteMeasure::weight(const BerkPoint& x) const {
  auto it = atoms_.find(x);
  return it == atoms_.end() ? Rational(0) : it->second;
}

DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  DiscreteMeasure m = a;
  m.add(b, Rational(-1));
  return m;
}

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  DiscreteMeasure m = a;
  m.add(b);
  return m;
}

Rational integrate(const std::function<LogValue(const BerkPoint&)>& f, const DiscreteMeasure& mu) {
  Rational s(0);
  for (const auto& [x, w] : mu.atoms()) {
    LogValue v = f(x);
    if (!v.is_finite()) throw InvalidArgument("integrand is infinite at atom " + x.str());
    s += w * v.value();
  }
  return s;
}

}  // namespace berk
