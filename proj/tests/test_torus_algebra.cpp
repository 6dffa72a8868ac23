// Slopes, manifolds, and 2-bridge certificates.
//
// delta() is cross-checked against an independent geometric oracle: the two
// curves are drawn as closed geodesics on the unit-square torus and their
// intersection points are counted by exact rational arithmetic.
#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "meridian/torus_algebra.hpp"

using namespace meridian;

namespace {

// Counts intersections of the geodesics t -> (t*a.m, t*a.l) and
// s -> (s*b.m, s*b.l) on the unit-square torus. A crossing happens whenever
// t*a.m - s*b.m = j and t*a.l - s*b.l = k for integers (j, k) with the
// solution (t, s) inside [0,1) x [0,1). Solved exactly by Cramer's rule.
std::int64_t lattice_delta_oracle(const Slope& a, const Slope& b) {
  std::int64_t den = a.m * (-b.l) - a.l * (-b.m);  // det of the 2x2 system
  if (den == 0) return 0;                          // parallel geodesics
  std::int64_t jb = (a.m < 0 ? -a.m : a.m) + (b.m < 0 ? -b.m : b.m);
  std::int64_t kb = (a.l < 0 ? -a.l : a.l) + (b.l < 0 ? -b.l : b.l);
  std::int64_t count = 0;
  for (std::int64_t j = -jb; j <= jb; ++j) {
    for (std::int64_t k = -kb; k <= kb; ++k) {
      // t = (j*(-b.l) - (-b.m)*k) / den, s = (a.m*k - a.l*j) / den
      std::int64_t num_t = -j * b.l + k * b.m;
      std::int64_t num_s = a.m * k - a.l * j;
      std::int64_t d = den;
      if (d < 0) {
        num_t = -num_t;
        num_s = -num_s;
        d = -d;
      }
      if (num_t >= 0 && num_t < d && num_s >= 0 && num_s < d) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("canonicalize reduces and normalizes") {
  CHECK(meridian::canonicalize(2, 4) == Slope{1, 2});
  CHECK(meridian::canonicalize(-1, 0) == Slope{1, 0});
  CHECK(meridian::canonicalize(-3, -6) == Slope{1, 2});
  CHECK(meridian::canonicalize(0, -5) == Slope{0, 1});
  CHECK(meridian::canonicalize(7, 0) == Slope{1, 0});

  SECTION("idempotent") {
    for (std::int64_t m = -6; m <= 6; ++m)
      for (std::int64_t l = -6; l <= 6; ++l) {
        if (m == 0 && l == 0) continue;
        Slope once = meridian::canonicalize(m, l);
        CHECK(meridian::canonicalize(once.m, once.l) == once);
        CHECK(is_canonical(once));
      }
  }

  SECTION("zero vector throws") {
    CHECK_THROWS_AS(meridian::canonicalize(0, 0), ZeroVectorError);
  }
}

TEST_CASE("delta on pinned pairs") {
  CHECK(delta(Slope{1, 0}, Slope{1, 0}) == 0);
  CHECK(delta(Slope{1, 0}, Slope{0, 1}) == 1);
  CHECK(delta(Slope{2, 1}, Slope{1, 2}) == 3);
}

TEST_CASE("delta is symmetric, reflexive-zero, canonicalization-invariant") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<std::int64_t> coeff(-9, 9);
  int tried = 0;
  while (tried < 300) {
    std::int64_t m1 = coeff(rng), l1 = coeff(rng), m2 = coeff(rng), l2 = coeff(rng);
    if ((m1 == 0 && l1 == 0) || (m2 == 0 && l2 == 0)) continue;
    ++tried;
    Slope a = meridian::canonicalize(m1, l1);
    Slope b = meridian::canonicalize(m2, l2);
    CHECK(delta(a, b) == delta(b, a));
    CHECK(delta(a, a) == 0);
    // delta must not care whether the arguments were reduced first.
    Slope a_raw{m1, l1};
    CHECK(delta(a, b) * (std::gcd(std::abs(m1), std::abs(l1))) == delta(a_raw, b));
    CHECK((delta(a, b) == 0) == (a == b));
  }
}

TEST_CASE("delta equals the unit-square lattice-counting oracle") {
  std::mt19937 rng(977);
  std::uniform_int_distribution<std::int64_t> coeff(-8, 8);
  int tried = 0;
  while (tried < 400) {
    std::int64_t m1 = coeff(rng), l1 = coeff(rng), m2 = coeff(rng), l2 = coeff(rng);
    if ((m1 == 0 && l1 == 0) || (m2 == 0 && l2 == 0)) continue;
    ++tried;
    Slope a = meridian::canonicalize(m1, l1);
    Slope b = meridian::canonicalize(m2, l2);
    INFO("a = (" << a.m << "," << a.l << "), b = (" << b.m << "," << b.l << ")");
    CHECK(delta(a, b) == lattice_delta_oracle(a, b));
  }
}

TEST_CASE("manifold meridian and longitude conventions") {
  ManifoldSpec s3 = ManifoldSpec::s3();
  ManifoldSpec s1xs2 = ManifoldSpec::s1xs2();
  ManifoldSpec l52 = ManifoldSpec::lens(5, 2);
  ManifoldSpec l31 = ManifoldSpec::lens(3, 1);

  CHECK(s3.lambda() == Slope{1, 0});
  CHECK(s1xs2.lambda() == Slope{1, 0});
  CHECK(l52.lambda() == Slope{1, 0});

  CHECK(s3.mu() == Slope{0, 1});
  CHECK(s1xs2.mu() == Slope{1, 0});
  CHECK(l52.mu() == Slope{2, 5});
  CHECK(l31.mu() == Slope{1, 3});

  CHECK(delta(s3.mu(), s3.lambda()) == 1);
  CHECK(delta(s1xs2.mu(), s1xs2.lambda()) == 0);
  CHECK(delta(l52.mu(), l52.lambda()) == 5);
  CHECK(delta(l31.mu(), l31.lambda()) == 3);

  CHECK_THROWS_AS(ManifoldSpec::lens(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(ManifoldSpec::lens(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(ManifoldSpec::lens(5, 5), std::invalid_argument);
}

TEST_CASE("two-bridge fraction validity") {
  CHECK(is_valid_two_bridge(TwoBridgeFraction{1, 0}));
  CHECK(is_valid_two_bridge(TwoBridgeFraction{3, 1}));
  CHECK(is_valid_two_bridge(TwoBridgeFraction{3, 2}));
  CHECK(is_valid_two_bridge(TwoBridgeFraction{5, 3}));
  CHECK_FALSE(is_valid_two_bridge(TwoBridgeFraction{1, 1}));
  CHECK_FALSE(is_valid_two_bridge(TwoBridgeFraction{2, 1}));   // even p: a link
  CHECK_FALSE(is_valid_two_bridge(TwoBridgeFraction{9, 3}));   // gcd > 1
  CHECK_FALSE(is_valid_two_bridge(TwoBridgeFraction{5, 0}));
  CHECK_FALSE(is_valid_two_bridge(TwoBridgeFraction{5, 5}));
  CHECK_FALSE(is_valid_two_bridge(TwoBridgeFraction{-3, 1}));
  CHECK_THROWS_AS(make_two_bridge(2, 1), std::invalid_argument);
}

TEST_CASE("non-triviality threshold p >= 3") {
  CHECK_FALSE(is_nontrivial_two_bridge(TwoBridgeFraction{1, 0}));
  CHECK(is_nontrivial_two_bridge(TwoBridgeFraction{3, 1}));
  CHECK(is_nontrivial_two_bridge(TwoBridgeFraction{5, 3}));
}

TEST_CASE("two-bridge equivalence matches the frozen class tables") {
  CHECK(two_bridge_equivalent(make_two_bridge(3, 1), make_two_bridge(3, 1)));
  CHECK(two_bridge_equivalent(make_two_bridge(5, 2), make_two_bridge(5, 3)));  // 2*3 = 6 = 1 mod 5
  CHECK_FALSE(two_bridge_equivalent(make_two_bridge(5, 2), make_two_bridge(7, 2)));

  // Classes are {q, q^-1 mod p}; in particular b(p, 1) and b(p, p-1) are
  // mirror knots and NOT identified.
  // p = 3: {1}, {2}
  CHECK_FALSE(two_bridge_equivalent(make_two_bridge(3, 1), make_two_bridge(3, 2)));
  // p = 5: {1}, {4}, {2, 3}
  CHECK_FALSE(two_bridge_equivalent(make_two_bridge(5, 1), make_two_bridge(5, 4)));
  // p = 7: {1}, {6}, {2, 4}, {3, 5}
  CHECK(two_bridge_equivalent(make_two_bridge(7, 2), make_two_bridge(7, 4)));
  CHECK(two_bridge_equivalent(make_two_bridge(7, 3), make_two_bridge(7, 5)));
  CHECK_FALSE(two_bridge_equivalent(make_two_bridge(7, 1), make_two_bridge(7, 6)));
  CHECK_FALSE(two_bridge_equivalent(make_two_bridge(7, 2), make_two_bridge(7, 3)));
  // p = 9: {1}, {8}, {2, 5}, {4, 7}
  CHECK(two_bridge_equivalent(make_two_bridge(9, 2), make_two_bridge(9, 5)));
  CHECK(two_bridge_equivalent(make_two_bridge(9, 4), make_two_bridge(9, 7)));
  CHECK_FALSE(two_bridge_equivalent(make_two_bridge(9, 2), make_two_bridge(9, 4)));
}

TEST_CASE("two-bridge equivalence is an equivalence relation for p <= 15") {
  for (std::int64_t p = 1; p <= 15; p += 2) {
    std::vector<TwoBridgeFraction> all;
    if (p == 1) {
      all.push_back(TwoBridgeFraction{1, 0});
    } else {
      for (std::int64_t q = 1; q < p; ++q)
        if (std::gcd(p, q) == 1) all.push_back(TwoBridgeFraction{p, q});
    }
    for (const auto& a : all) {
      CHECK(two_bridge_equivalent(a, a));
      for (const auto& b : all) {
        CHECK(two_bridge_equivalent(a, b) == two_bridge_equivalent(b, a));
        for (const auto& c : all) {
          if (two_bridge_equivalent(a, b) && two_bridge_equivalent(b, c)) {
            INFO("p=" << p << " a.q=" << a.q << " b.q=" << b.q << " c.q=" << c.q);
            CHECK(two_bridge_equivalent(a, c));
          }
        }
      }
    }
  }
}
