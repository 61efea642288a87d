#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "berk/measure.hpp"
#include "berk/point.hpp"

namespace berk {

// Finite subtree of H spanned by disc points, rooted at its top vertex (the one nearest infinity).
class FiniteTree {
 public:
  /// Hull of the points: all pairwise joins become vertices. Type I points are replaced by
  /// discs lying `depth` below every other finite height (or above, for infinity).
  static FiniteTree span(const std::vector<BerkPoint>& points, const Rational& depth = Rational(10));

  std::size_t size() const { return vertices_.size(); }
  const std::vector<BerkPoint>& vertices() const { return vertices_; }
  const BerkPoint& vertex(std::size_t i) const { return vertices_[i]; }
  std::size_t root() const { return root_; }
  /// Parent index, or -1 at the root.
  long parent(std::size_t i) const { return parent_[i]; }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
  /// Length of the edge from i to its parent.
  const Rational& edge_length(std::size_t i) const { return length_[i]; }
  std::vector<std::size_t> neighbors(std::size_t i) const;
  long valence(std::size_t i) const;
  std::optional<std::size_t> index_of(const BerkPoint& x) const;

  // A tree point: vertex `lower` itself (offset 0) or the point at distance `offset`
  // above `lower` on its parent edge.
  struct Location {
    std::size_t lower;
    Rational offset;
  };
  std::optional<Location> locate(const BerkPoint& x) const;
  bool contains(const BerkPoint& x) const { return locate(x).has_value(); }

  friend bool operator==(const FiniteTree& a, const FiniteTree& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<BerkPoint> vertices_;
  std::vector<long> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<Rational> length_;
  std::size_t root_ = 0;
};

/// First point of the tree on the path from x toward the tree.
BerkPoint retract(const FiniteTree& tree, const BerkPoint& x);

// Continuous piecewise-affine function given by its vertex values.
class CPAFunction {
 public:
  CPAFunction(FiniteTree tree, std::vector<Rational> values);
  static CPAFunction from(const FiniteTree& tree, const std::function<Rational(const BerkPoint&)>& f);

  const FiniteTree& tree() const { return tree_; }
  const std::vector<Rational>& values() const { return values_; }
  /// Value at any point of the tree.
  Rational value_at(const BerkPoint& x) const;
  /// Same function on the tree with the given tree points added as vertices.
  CPAFunction refined(const std::vector<BerkPoint>& extra) const;

 private:
  FiniteTree tree_;
  std::vector<Rational> values_;
};

DiscreteMeasure laplacian(const CPAFunction& f);
/// (positive part on endpoints, negative part on branch points).
std::pair<DiscreteMeasure, DiscreteMeasure> branching_measure(const FiniteTree& tree);
/// -integral of log delta(w, z)_base d lambda(w).
Rational potential(const DiscreteMeasure& lambda, const BerkPoint& base, const BerkPoint& z);
/// (integral of f dLaplacian(g), integral of g dLaplacian(f)).
std::pair<Rational, Rational> self_adjointness_check(const CPAFunction& f, const CPAFunction& g);

}  // namespace berk
