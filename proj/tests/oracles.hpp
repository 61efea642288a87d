#pragma once

// Reference computations used to cross-check the library. Each one takes a route
// unrelated to the code under test: brute force over lattice points, permutation
// expansion, sampling of Q_p points, or exhaustive search over a grid of discs.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "berk/rmap.hpp"
#include "berk/valuation.hpp"

namespace berk::oracle {

struct Segment {
  Rational slope;
  long length;
};

// Lower hull by testing every pair of lattice points against all others.
inline std::vector<Segment> newton_segments(const std::vector<Rational>& coeffs, long p) {
  std::vector<std::pair<long, long>> pts;
  for (long i = 0; i < static_cast<long>(coeffs.size()); ++i) {
    if (coeffs[i] != 0) pts.emplace_back(i, vp(coeffs[i], p));
  }
  std::vector<Segment> out;
  std::size_t k = 0;
  while (k + 1 < pts.size()) {
    std::size_t best = k + 1;
    Rational best_slope(pts[best].second - pts[k].second, pts[best].first - pts[k].first);
    best_slope.canonicalize();
    for (std::size_t j = k + 2; j < pts.size(); ++j) {
      Rational s(pts[j].second - pts[k].second, pts[j].first - pts[k].first);
      s.canonicalize();
      if (s <= best_slope) {
        best_slope = s;
        best = j;
      }
    }
    out.push_back({best_slope, pts[best].first - pts[k].first});
    k = best;
  }
  return out;
}

// Leibniz expansion of a determinant.
inline Rational leibniz_det(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total(0);
  do {
    long inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (perm[i] > perm[j]) ++inversions;
      }
    }
    Rational term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Sylvester matrix of F, G as binary forms of degree n.
inline Rational sylvester_resultant(const Poly& f, const Poly& g, long n) {
  const std::size_t N = static_cast<std::size_t>(2 * n);
  std::vector<std::vector<Rational>> m(N, std::vector<Rational>(N, Rational(0)));
  for (long r = 0; r < n; ++r) {
    for (long i = 0; i <= n; ++i) {
      m[r][r + i] = f.coeff(n - i);
      m[n + r][r + i] = g.coeff(n - i);
    }
  }
  return leibniz_det(m);
}

// Largest |f(x)| over Q_p points x sampled from the closed disc, in log_v units.
inline Rational sampled_sup_log(const Poly& f, const Rational& center, long t, long p, std::mt19937_64& rng,
                                int samples = 1000) {
  Rational best;
  bool first = true;
  for (int i = 0; i < samples; ++i) {
    long u = std::uniform_int_distribution<long>(0, 10000)(rng);
    Rational x = center + Rational(u) * pow_p(p, -t);
    Rational y = f.eval(x);
    if (y == 0) continue;
    Rational l(-vp(y, p));
    if (first || l > best) best = l;
    first = false;
  }
  return best;
}

// Exhaustive search of a grid of discs for points mapping onto target.
inline std::set<BerkPoint> grid_preimages(const RationalMap& phi, const BerkPoint& target, long span, long max_den,
                                          long radius_span) {
  const long p = phi.prime();
  std::set<BerkPoint> out;
  std::set<BerkPoint> seen;
  for (long q = 1; q <= max_den; ++q) {
    for (long a = -radius_span * q; a <= radius_span * q; ++a) {
      Rational t(a, q);
      t.canonicalize();
      for (long e = 0; e <= 2; ++e) {
        for (long k = -span; k <= span; ++k) {
          BerkPoint x = BerkPoint::disc(Rational(k) * pow_p(p, -e), t, p);
          if (!seen.insert(x).second) continue;
          if (apply(phi, x) == target) out.insert(x);
        }
      }
    }
  }
  return out;
}

// For polynomial maps a disc maps onto a disc with constant valence: the number of
// solutions of phi(z) = y inside the closed disc for any y in the image disc.
inline long polynomial_local_degree(const RationalMap& phi, const BerkPoint& x) {
  BerkPoint img = apply(phi, x);
  Poly h = phi.numerator() - img.center() * phi.denominator();
  return root_count_in_disc(h, x.center(), x.log_radius(), phi.prime(), DiscKind::Closed);
}

}  // namespace berk::oracle
