#include <doctest.h>

#include "berk/errors.hpp"
#include "berk/reduction.hpp"
#include "berk/rmap.hpp"
#include "berk/suite.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace berk;
using namespace berk::test;

namespace {

// rho-stretch of t -> apply(phi, Disc(c, t)) between two radii.
Rational stretch(const RationalMap& phi, const Rational& c, const Rational& t1, const Rational& t2) {
  long p = phi.prime();
  return rho(apply(phi, D(c, t1, p)), apply(phi, D(c, t2, p))).value() / abs(Rational(t2 - t1));
}

RationalMap random_map(std::mt19937_64& rng, long p, long max_degree) {
  for (;;) {
    Poly f = random_poly(rng, p, max_degree), g = random_poly(rng, p, max_degree);
    if (std::max(f.degree(), g.degree()) < 1) continue;
    if (Poly::gcd(f, g).degree() > 0) continue;
    return RationalMap(f, g, FieldContext(p));
  }
}

}  // namespace

TEST_CASE("map construction") {
  CHECK_THROWS_AS(RationalMap(P({0, 1}), P({0, 1}), FieldContext(3)), InvalidArgument);
  CHECK_THROWS_AS(RationalMap(P({2}), P({1}), FieldContext(3)), InvalidArgument);
  auto phi = M({0, 0, 2}, {4}, 3);
  CHECK(phi.denominator() == P({1}));
  CHECK(phi.numerator() == Poly({R(0), R(0), R(1, 2)}));
  CHECK(phi.degree() == 2);
  CHECK(phi.eval(I(R(2), 3)) == I(R(2), 3));
  CHECK(M({1}, {0, 1}, 3).eval(I(R(0), 3)).is_infinity());
  CHECK(M({1}, {0, 1}, 3).eval(BerkPoint::infinity(3)) == I(R(0), 3));
}

TEST_CASE("seminorm examples") {
  CHECK(seminorm_log(Poly::t(), G(5)) == LogValue(0));
  CHECK(seminorm_log(P({-3, 0, 1}), D(R(0), R(-1), 3)) == LogValue(-1));
  CHECK(seminorm_log(P({2, -3, 1}), G(5)) == LogValue(0));
  CHECK(seminorm_log(P({-3, 0, 1}), I(R(0), 3)) == LogValue(-1));

  std::mt19937_64 rng(31);
  CHECK(oracle::sampled_sup_log(P({-3, 0, 1}), R(0), -1, 3, rng) == -1);
  CHECK(oracle::sampled_sup_log(P({2, -3, 1}), R(0), 0, 5, rng) == 0);
}

TEST_CASE("map seminorm examples") {
  CHECK(map_seminorm_log(M({0, 0, 1}, {1}, 3), G(3)) == LogValue(0));
  CHECK(map_seminorm_log(M({0, 0, 2}, {1}, 2), G(2)) == LogValue(-1));
  CHECK(map_seminorm_log(M({1}, {0, 1}, 3), D(R(0), R(-1), 3)) == LogValue(1));
  CHECK(map_seminorm_log(M({1}, {0, 1}, 3), I(R(0), 3)).is_pos_inf());
}

TEST_CASE("apply examples") {
  CHECK(apply(M({0, 0, 1}, {1}, 2), G(2)) == G(2));
  CHECK(apply(M({0, 0, 1}, {1}, 5), D(R(1), R(-1), 5)) == D(R(1), R(-1), 5));
  CHECK(apply(M({0, 0, 3}, {1}, 3), G(3)) == D(R(0), R(-1), 3));
  CHECK(apply(M({0, 0, 3}, {1}, 3), D(R(0), R(1, 2), 3)) == G(3));
  CHECK(apply(M({1}, {0, 1}, 3), D(R(0), R(-2), 3)) == D(R(0), R(2), 3));
  CHECK(apply(M({0, 0, 1}, {1}, 3), I(R(2), 3)) == I(R(4), 3));
  // (z^2 + 1)/5 over Q_5 sends the residue disc of 2 onto the Gauss point
  CHECK(apply(M({1, 0, 1}, {5}, 5), D(R(2), R(-1), 5)) == G(5));
}

TEST_CASE("Mobius action examples") {
  auto x = D(R(4), R(-3), 3);
  CHECK(mobius_apply(Mobius::translation(R(5)), x) == D(R(9), R(-3), 3));
  CHECK(mobius_apply(Mobius::scaling(R(9)), x) == D(R(36), R(-5), 3));
  CHECK(mobius_apply(Mobius::scaling(R(1, 3)), x) == D(R(4, 3), R(-2), 3));
  CHECK(mobius_apply(Mobius::inversion(), D(R(0), R(-2), 3)) == D(R(0), R(2), 3));
  CHECK(mobius_apply(Mobius::inversion(), I(R(0), 3)).is_infinity());
  CHECK_THROWS_AS(Mobius(R(1), R(2), R(3), R(6)), InvalidArgument);
}

TEST_CASE("derivative seminorm examples") {
  CHECK(derivative_seminorm_log(M({0, 0, 1}, {1}, 2), G(2)) == LogValue(-1));
  CHECK(derivative_seminorm_log(M({0, 0, 0, 1}, {1}, 2), G(2)) == LogValue(0));
  CHECK(derivative_seminorm_log(M({1, 0, 1}, {1}, 5), D(R(0), R(-1), 5)) == LogValue(-1));
  CHECK(derivative_seminorm_log(M({0, 0, 3}, {1}, 3), D(R(0), R(1, 2), 3)) == LogValue(R(-1, 2)));
}

TEST_CASE("spherical derivative examples") {
  auto sq = M({0, 0, 1}, {1}, 3);
  CHECK(spherical_derivative_log(sq, G(3)) == LogValue(0));
  // |6| max(1,|3|)^2 / max(1,|9|)^2 = 1/3
  CHECK(spherical_derivative_log(sq, I(R(3), 3)) == LogValue(-1));
  CHECK(spherical_derivative_log(sq, BerkPoint::infinity(3)).is_neg_inf());
  auto sq2 = compose(sq, sq);
  CHECK(spherical_derivative_log(sq2, G(3)) ==
        spherical_derivative_log(sq, apply(sq, G(3))) + spherical_derivative_log(sq, G(3)));
  CHECK(spherical_derivative_log(sq2, G(3)) == LogValue(0));
  CHECK(spherical_derivative_log(M({0, 0, 1}, {1}, 2), G(2)) == LogValue(-1));
}

TEST_CASE("distortion examples") {
  CHECK(distortion(M({0, 0, 1}, {1}, 5), G(5)) == 0);
  CHECK(distortion(M({0, 0, 1}, {1}, 2), G(2)) == -1);
  auto tr = M({1, 1}, {1}, 3);
  CHECK(distortion(tr, G(3)) == 0);
  CHECK(distortion(tr, D(R(-1), R(-4), 3)) == 0);
  CHECK(distortion(tr, D(R(0), R(-2), 3)) == -2);
}

TEST_CASE("conjugation examples") {
  auto phi = M({0, 0, 3}, {1}, 3);
  auto psi = conjugate(phi, Mobius::scaling(R(1, 3)));
  CHECK(psi == M({0, 0, 1}, {1}, 3));
  CHECK(conjugate(phi, Mobius::identity()) == phi);
  auto gamma = Mobius(R(1), R(2), R(1), R(3));
  CHECK(conjugate(conjugate(phi, gamma), gamma.inverse()) == phi);
  CHECK(conjugate(M({0, 0, 1}, {1}, 3), Mobius::inversion()) == M({0, 0, 1}, {1}, 3));
  CHECK(compose(M({1, 1}, {1}, 3), M({-1, 1}, {1}, 3)) == RationalMap::identity(FieldContext(3)));
}

TEST_CASE("reduction examples") {
  auto r = reduction(M({0, 0, 1}, {1}, 3));
  CHECK(r.good_reduction);
  CHECK(r.separable);
  CHECK(r.degree == 2);
  r = reduction(M({0, 0, 0, 1}, {1}, 3));
  CHECK(r.good_reduction);
  CHECK(!r.separable);
  r = reduction(M({0, 1, 3}, {1}, 3));
  CHECK(!r.good_reduction);
  CHECK(r.degree == 1);
  r = reduction(M({1, 0, 1}, {3}, 3));
  CHECK(!r.good_reduction);
}

TEST_CASE("Lipschitz bound examples") {
  CHECK(lipschitz_log_bound(M({0, 0, 1}, {1}, 5)) == 0);
  CHECK(lipschitz_log_bound(M({1, 1}, {1}, 3)) == 0);
  // Normalized lift (3X^2, Y^2): Res = 9
  CHECK(lipschitz_log_bound(M({0, 0, 3}, {1}, 3)) == 4);
  CHECK(oracle::sylvester_resultant(P({0, 0, 3}), P({1}), 2) == 9);
  CHECK(oracle::sylvester_resultant(P({1, 0, 1}), P({5}), 2) == 25);
  CHECK(lipschitz_log_bound(M({1, 0, 1}, {5}, 5)) == 4);
}

TEST_CASE("directional multiplicity examples") {
  auto sq5 = M({0, 0, 1}, {1}, 5);
  CHECK(directional_multiplicity(sq5, G(5), Direction::toward(I(R(0), 5))) == 2);
  CHECK(stretch(sq5, R(0), R(-1), R(-2)) == 2);
  CHECK(directional_multiplicity(sq5, G(5), Direction::toward(I(R(1), 5))) == 1);
  CHECK(stretch(sq5, R(1), R(-1), R(-2)) == 1);
  auto sq2 = M({0, 0, 1}, {1}, 2);
  CHECK(directional_multiplicity(sq2, G(2), Direction::toward(I(R(1), 2))) == 2);
  CHECK(stretch(sq2, R(1), R(-1, 4), R(-1, 2)) == 2);
  CHECK(directional_multiplicity(sq5, G(5), Direction::infinity()) == 2);
}

TEST_CASE("multiplicity examples") {
  CHECK(multiplicity(M({0, 0, 1}, {1}, 5), G(5)) == 2);
  CHECK(oracle::polynomial_local_degree(M({0, 0, 1}, {1}, 5), G(5)) == 2);
  CHECK(multiplicity(M({0, 1, 1}, {1}, 3), G(3)) == 2);
  CHECK(multiplicity(M({0, 1, 1}, {1}, 5), G(5)) == 2);
  CHECK(multiplicity(M({2, 1}, {1, 3}, 3), D(R(1), R(-2), 3)) == 1);
  CHECK(multiplicity(M({0, 0, 1}, {1}, 3), I(R(0), 3)) == 2);
  CHECK(multiplicity(M({0, 0, 1}, {1}, 3), BerkPoint::infinity(3)) == 2);
  CHECK(multiplicity(M({0, 0, 3}, {1}, 3), D(R(0), R(1, 2), 3)) == 2);
  CHECK(oracle::polynomial_local_degree(M({0, 0, 3}, {1}, 3), D(R(0), R(1, 2), 3)) == 2);
}

TEST_CASE("surplus multiplicity examples") {
  auto sq5 = M({0, 0, 1}, {1}, 5);
  for (long j = 0; j < 5; ++j) CHECK(surplus_multiplicity(sq5, G(5), Direction::toward(I(R(j), 5))) == 0);
  CHECK(surplus_multiplicity(sq5, G(5), Direction::infinity()) == 0);
  auto pz2 = M({0, 0, 3}, {1}, 3);
  CHECK(surplus_multiplicity(pz2, G(3), Direction::infinity()) == 0);
  // 3 z^2 = w has both roots outside the unit disc for w of valuation 0 and -5.
  CHECK(root_count_in_disc(P({-1, 0, 3}), R(0), R(0), 3, DiscKind::Closed) == 0);
  CHECK(root_count_in_disc(P({-1, 0, 729}), R(0), R(0), 3, DiscKind::Closed) == 0);
  CHECK(surplus_multiplicity(M({1, 1}, {1}, 3), G(3), Direction::toward(I(R(0), 3))) == 0);
  // (z^2 + 1)/5: the residue disc of 2 maps onto an open disc, so no surplus.
  auto q = M({1, 0, 1}, {5}, 5);
  CHECK(surplus_multiplicity(q, G(5), Direction::toward(I(R(2), 5))) == 0);
  CHECK(directional_multiplicity(q, G(5), Direction::toward(I(R(2), 5))) == 1);
  CHECK(preimage_count_in_direction(q, I(R(0), 5), G(5), Direction::toward(I(R(2), 5))) == 1);
  CHECK(preimage_count_in_direction(sq5, I(R(0), 5), G(5), Direction::toward(I(R(0), 5))) == 2);
}

TEST_CASE("property: seminorm multiplicativity") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 500; ++i) {
    long p = random_prime(rng);
    Poly f = random_poly(rng, p, 4), g = random_poly(rng, p, 4);
    auto x = random_disc(rng, p);
    CHECK(seminorm_log(f * g, x) == seminorm_log(f, x) + seminorm_log(g, x));
  }
}

TEST_CASE("property: seminorm matches sampled sup at type II points") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 60; ++i) {
    long p = 5 + 2 * uniform(rng, 0, 1);  // 5 or 7: residue classes outnumber degree
    Poly f = random_poly(rng, p, 3);
    Rational c(uniform(rng, -10, 10));
    long t = uniform(rng, -2, 2);
    CHECK(seminorm_log(f, D(c, R(t), p)) == LogValue(oracle::sampled_sup_log(f, c, t, p, rng, 400)));
  }
}

TEST_CASE("property: apply agrees with the pole-free recentered route") {
  std::mt19937_64 rng(34);
  long compared = 0;
  for (int i = 0; i < 400; ++i) {
    long p = random_prime(rng);
    auto phi = random_map(rng, p, 3);
    auto x = random_disc(rng, p);
    auto alt = apply_recentered(phi, x);
    if (!alt) continue;
    ++compared;
    CHECK(apply(phi, x) == *alt);
  }
  CHECK(compared > 300);
}

TEST_CASE("property: Mobius maps act through apply") {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 300; ++i) {
    long p = random_prime(rng);
    Rational a = random_rational(rng, p), b = random_rational(rng, p), c = random_rational(rng, p),
             d = random_rational(rng, p);
    if (a * d - b * c == 0) continue;
    Mobius g(a, b, c, d);
    auto x = random_disc(rng, p);
    CHECK(mobius_apply(g, x) == apply(g.to_map(FieldContext(p)), x));
    CHECK(mobius_apply(g.inverse(), mobius_apply(g, x)) == x);
    CHECK(multiplicity(g.to_map(FieldContext(p)), x) == 1);
  }
}

TEST_CASE("property: chain rule for derivative seminorms") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 200; ++i) {
    long p = random_prime(rng);
    auto phi = random_map(rng, p, 2), psi = random_map(rng, p, 2);
    auto x = random_disc(rng, p);
    auto comp = compose(phi, psi);
    auto y = apply(psi, x);
    CHECK(derivative_seminorm_log(comp, x) == derivative_seminorm_log(phi, y) + derivative_seminorm_log(psi, x));
    CHECK(spherical_derivative_log(comp, x) ==
          spherical_derivative_log(phi, y) + spherical_derivative_log(psi, x));
    CHECK(apply(comp, x) == apply(phi, y));
  }
}

TEST_CASE("property: conjugation is a group action") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    long p = random_prime(rng);
    auto phi = random_map(rng, p, 3);
    Mobius g(random_rational(rng, p), random_rational(rng, p), Rational(uniform(rng, 0, 3)), Rational(1));
    if (g.a() * g.d() - g.b() * g.c() == 0) continue;
    CHECK(conjugate(conjugate(phi, g), g.inverse()) == phi);
    CHECK(conjugate(phi, g).degree() == phi.degree());
  }
}

TEST_CASE("property: classical multiplicities over a fibre sum to d") {
  std::mt19937_64 rng(38);
  long checked = 0;
  for (int i = 0; i < 300; ++i) {
    long p = random_prime(rng);
    auto phi = random_map(rng, p, 3);
    auto y = phi.eval(I(Rational(uniform(rng, -20, 20)), p));
    if (y.is_infinity()) continue;
    Poly h = phi.numerator() - y.center() * phi.denominator();
    std::vector<HenselRoot> roots;
    try {
      roots = hensel_roots(h.coeffs(), FieldContext(p));
    } catch (const RequiresExtension&) {
      continue;
    }
    long total = 0;
    for (const auto& r : roots) {
      if (!r.root.exact) continue;
      total += multiplicity(phi, I(r.root.approx, p));
    }
    long rational_count = 0;
    for (const auto& r : roots) rational_count += r.root.exact ? r.multiplicity : 0;
    if (rational_count != h.degree()) continue;
    if (h.degree() < phi.degree()) total += multiplicity(phi, BerkPoint::infinity(p));
    CHECK(total == phi.degree());
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("property: good reduction criteria agree") {
  std::mt19937_64 rng(39);
  for (int i = 0; i < 300; ++i) {
    long p = random_prime(rng);
    auto phi = random_map(rng, p, 3);
    bool good = reduction(phi).good_reduction;
    CHECK(good == (lipschitz_log_bound(phi) == 0));
    bool fixes = apply(phi, G(p)) == G(p) && multiplicity(phi, G(p)) == phi.degree();
    CHECK(good == fixes);
  }
}

TEST_CASE("property: resultant against permutation expansion") {
  std::mt19937_64 rng(40);
  for (int i = 0; i < 100; ++i) {
    long p = random_prime(rng);
    Poly f = random_poly(rng, p, 3), g = random_poly(rng, p, 3);
    long n = std::max<long>(1, std::max(f.degree(), g.degree()));
    CHECK(homogeneous_resultant(f, g, n) == oracle::sylvester_resultant(f, g, n));
  }
}

TEST_CASE("property: Lipschitz inequality on type I pairs") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 30; ++i) {
    long p = random_prime(rng);
    auto phi = random_map(rng, p, 3);
    CHECK(check_lipschitz(phi, 200, rng).ok);
  }
}
