#include "berk/tree.hpp"

#include <algorithm>
#include <set>

#include "berk/errors.hpp"

namespace berk {

namespace {

std::vector<BerkPoint> truncate_type_i(const std::vector<BerkPoint>& points, const Rational& depth) {
  bool any_finite = false;
  Rational lo, hi;
  auto note = [&](const Rational& h) {
    if (!any_finite) {
      lo = hi = h;
      any_finite = true;
    } else {
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
  };
  for (const auto& x : points) {
    if (x.is_disc()) note(x.log_radius());
    if (!x.is_infinity() && x.center() != 0) note(log_abs(x.center(), x.prime()).value());
    for (const auto& y : points) {
      if (x.is_infinity() || y.is_infinity()) continue;
      LogValue l = log_abs(x.center() - y.center(), x.prime());
      if (l.is_finite()) note(l.value());
    }
  }
  if (!any_finite) lo = hi = Rational(0);
  std::vector<BerkPoint> out;
  for (const auto& x : points) {
    if (x.is_disc()) {
      out.push_back(x);
    } else if (x.is_infinity()) {
      out.push_back(BerkPoint::disc(Rational(0), hi + depth, x.prime()));
    } else {
      out.push_back(BerkPoint::disc(x.center(), lo - depth, x.prime()));
    }
  }
  return out;
}

}  // namespace

FiniteTree FiniteTree::span(const std::vector<BerkPoint>& points, const Rational& depth) {
  if (points.empty()) throw InvalidArgument("span of an empty point set");
  std::vector<BerkPoint> base = truncate_type_i(points, depth);
  std::set<BerkPoint> vs(base.begin(), base.end());
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) vs.insert(join_infinity(base[i], base[j]));
  }
  FiniteTree t;
  t.vertices_.assign(vs.begin(), vs.end());
  const std::size_t n = t.vertices_.size();
  t.parent_.assign(n, -1);
  t.children_.assign(n, {});
  t.length_.assign(n, Rational(0));
  long roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const BerkPoint& v = t.vertices_[i];
    long best = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const BerkPoint& w = t.vertices_[j];
      if (!v.below(w)) continue;
      if (best < 0 || w.log_radius() < t.vertices_[static_cast<std::size_t>(best)].log_radius()) {
        best = static_cast<long>(j);
      }
    }
    t.parent_[i] = best;
    if (best < 0) {
      t.root_ = i;
      ++roots;
    } else {
      t.children_[static_cast<std::size_t>(best)].push_back(i);
      t.length_[i] = t.vertices_[static_cast<std::size_t>(best)].log_radius() - v.log_radius();
    }
  }
  if (roots != 1) throw InternalError("spanned tree does not have a unique top vertex");
  return t;
}

std::vector<std::size_t> FiniteTree::neighbors(std::size_t i) const {
  std::vector<std::size_t> out = children_[i];
  if (parent_[i] >= 0) out.push_back(static_cast<std::size_t>(parent_[i]));
  return out;
}

long FiniteTree::valence(std::size_t i) const {
  return static_cast<long>(children_[i].size()) + (parent_[i] >= 0 ? 1 : 0);
}

std::optional<std::size_t> FiniteTree::index_of(const BerkPoint& x) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x);
  if (it != vertices_.end() && *it == x) return static_cast<std::size_t>(it - vertices_.begin());
  return std::nullopt;
}

std::optional<FiniteTree::Location> FiniteTree::locate(const BerkPoint& x) const {
  if (!x.is_disc()) return std::nullopt;
  if (auto i = index_of(x)) return Location{*i, Rational(0)};
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (parent_[i] < 0) continue;
    const BerkPoint& par = vertices_[static_cast<std::size_t>(parent_[i])];
    if (vertices_[i].below(x) && x.below(par)) {
      return Location{i, x.log_radius() - vertices_[i].log_radius()};
    }
  }
  return std::nullopt;
}

BerkPoint retract(const FiniteTree& tree, const BerkPoint& x) {
  const BerkPoint& top = tree.vertex(tree.root());
  if (!x.below(top)) return top;
  std::optional<BerkPoint> best;
  for (const auto& v : tree.vertices()) {
    BerkPoint j = join_infinity(x, v);
    if (!best || j.height() < best->height()) best = j;
  }
  return *best;
}

CPAFunction::CPAFunction(FiniteTree tree, std::vector<Rational> values)
    : tree_(std::move(tree)), values_(std::move(values)) {
  if (values_.size() != tree_.size()) throw InvalidArgument("CPA values do not match the tree");
}

CPAFunction CPAFunction::from(const FiniteTree& tree, const std::function<Rational(const BerkPoint&)>& f) {
  std::vector<Rational> vals;
  for (const auto& v : tree.vertices()) vals.push_back(f(v));
  return CPAFunction(tree, std::move(vals));
}

Rational CPAFunction::value_at(const BerkPoint& x) const {
  auto loc = tree_.locate(x);
  if (!loc) throw InvalidArgument("point " + x.str() + " is not on the tree");
  const Rational& lower = values_[loc->lower];
  if (loc->offset == 0) return lower;
  const Rational& upper = values_[static_cast<std::size_t>(tree_.parent(loc->lower))];
  return lower + (upper - lower) * loc->offset / tree_.edge_length(loc->lower);
}

CPAFunction CPAFunction::refined(const std::vector<BerkPoint>& extra) const {
  std::vector<BerkPoint> pts = tree_.vertices();
  for (const auto& x : extra) {
    if (!tree_.contains(x)) throw InvalidArgument("refinement point " + x.str() + " is not on the tree");
    pts.push_back(x);
  }
  FiniteTree t = FiniteTree::span(pts);
  return CPAFunction::from(t, [this](const BerkPoint& x) { return value_at(x); });
}

DiscreteMeasure laplacian(const CPAFunction& f) {
  const FiniteTree& t = f.tree();
  DiscreteMeasure out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Rational w(0);
    for (std::size_t j : t.children(i)) w -= (f.values()[j] - f.values()[i]) / t.edge_length(j);
    if (t.parent(i) >= 0) {
      auto par = static_cast<std::size_t>(t.parent(i));
      w -= (f.values()[par] - f.values()[i]) / t.edge_length(i);
    }
    out.add(t.vertex(i), w);
  }
  return out;
}

std::pair<DiscreteMeasure, DiscreteMeasure> branching_measure(const FiniteTree& tree) {
  DiscreteMeasure plus, minus;
  if (tree.size() == 1) {
    plus.add(tree.vertex(0), Rational(1));
    return {plus, minus};
  }
  for (std::size_t i = 0; i < tree.size(); ++i) {
    Rational w = Rational(2 - tree.valence(i)) / 2;
    if (w > 0) plus.add(tree.vertex(i), w);
    if (w < 0) minus.add(tree.vertex(i), w);
  }
  return {plus, minus};
}

Rational potential(const DiscreteMeasure& lambda, const BerkPoint& base, const BerkPoint& z) {
  if (!base.is_disc()) throw InvalidArgument("potential needs a base point in H");
  Rational s(0);
  for (const auto& [w, c] : lambda.atoms()) {
    LogValue h = hsia_log(w, z, base);
    if (!h.is_finite()) throw InvalidArgument("potential is singular at " + z.str());
    s -= c * h.value();
  }
  return s;
}

std::pair<Rational, Rational> self_adjointness_check(const CPAFunction& f, const CPAFunction& g) {
  if (!(f.tree() == g.tree())) throw InvalidArgument("CPA functions live on different trees");
  auto as_log = [](const CPAFunction& h) {
    return [&h](const BerkPoint& x) { return LogValue(h.value_at(x)); };
  };
  return {integrate(as_log(f), laplacian(g)), integrate(as_log(g), laplacian(f))};
}

}  // namespace berk
