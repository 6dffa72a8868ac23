/**
 * \file torus_algebra.hpp
 * \brief Exact arithmetic for curves on tori, manifold specifications, and
 *        2-bridge certificates.
 *
 * A slope is the isotopy class of an essential simple closed curve on the
 * Heegaard torus, written as a coprime integer pair (m, l) in a fixed ordered
 * basis. The basis convention used everywhere in this library:
 *
 *   - lambda = (1, 0) is the curve bounding a disk in the lower solid torus
 *     R0, for every manifold;
 *   - mu is the curve bounding a meridian disk of the upper solid torus R1:
 *     (0, 1) for S^3, (1, 0) for S^1 x S^2, and the canonical form of (q, p)
 *     for the lens space L(p, q).
 *
 * With this convention delta(mu, lambda) is 1, 0, p respectively, and the
 * assembly condition "gamma_0 is not homotopic to the core of R0" becomes
 * a pure delta test.
 */
#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "meridian/validation.hpp"

namespace meridian {

/// Coprime integer pair naming an essential curve on the Heegaard torus.
/// Canonical form: l > 0, or (l == 0 and m == 1).
struct Slope {
  std::int64_t m = 0;  ///< meridian coordinate
  std::int64_t l = 0;  ///< longitude coordinate

  friend bool operator==(const Slope&, const Slope&) = default;
};

/// True iff `s` is reduced and sign-normalized.
inline bool is_canonical(const Slope& s) {
  if (s.m == 0 && s.l == 0) return false;
  if (std::gcd(s.m < 0 ? -s.m : s.m, s.l < 0 ? -s.l : s.l) != 1) return false;
  return s.l > 0 || (s.l == 0 && s.m == 1);
}

/// Reduce (raw_m, raw_l) by its gcd and normalize the sign so the result is
/// canonical. Idempotent. Throws ZeroVectorError on (0, 0).
inline Slope canonicalize(std::int64_t raw_m, std::int64_t raw_l) {
  if (raw_m == 0 && raw_l == 0)
    throw ZeroVectorError("canonicalize: (0,0) is not a curve");
  std::int64_t g = std::gcd(raw_m < 0 ? -raw_m : raw_m, raw_l < 0 ? -raw_l : raw_l);
  std::int64_t m = raw_m / g;
  std::int64_t l = raw_l / g;
  if (l < 0 || (l == 0 && m < 0)) {
    m = -m;
    l = -l;
  }
  return Slope{m, l};
}

/// Minimal geometric intersection number of two slopes: |a.m*b.l - a.l*b.m|.
/// Symmetric; zero iff the slopes agree in canonical form.
inline std::int64_t delta(const Slope& a, const Slope& b) {
  std::int64_t d = a.m * b.l - a.l * b.m;
  return d < 0 ? -d : d;
}

/// Ambient manifold of an assembly: S^3, S^1 x S^2, or a lens space L(p, q).
struct ManifoldSpec {
  enum class Kind { S3, S1xS2, Lens };

  Kind kind = Kind::S3;
  std::int64_t p = 0;  ///< lens order, >= 2 (Lens only)
  std::int64_t q = 0;  ///< lens twisting, coprime to p, 0 < q < p (Lens only)

  /// Curve bounding a disk in the lower solid torus R0. Always (1, 0).
  Slope lambda() const { return Slope{1, 0}; }

  /// Curve bounding a meridian disk of the upper solid torus R1.
  Slope mu() const {
    switch (kind) {
      case Kind::S3:    return Slope{0, 1};
      case Kind::S1xS2: return Slope{1, 0};
      case Kind::Lens:  return canonicalize(q, p);
    }
    return Slope{0, 1};  // unreachable
  }

  static ManifoldSpec s3() { return ManifoldSpec{Kind::S3, 0, 0}; }
  static ManifoldSpec s1xs2() { return ManifoldSpec{Kind::S1xS2, 0, 0}; }

  /// Lens space L(p, q); requires p >= 2, 0 < q < p, gcd(p, q) = 1.
  static ManifoldSpec lens(std::int64_t p, std::int64_t q) {
    if (p < 2 || q <= 0 || q >= p || std::gcd(p, q) != 1)
      throw std::invalid_argument("ManifoldSpec::lens: need p >= 2, 0 < q < p, gcd(p,q) = 1");
    return ManifoldSpec{Kind::Lens, p, q};
  }

  std::string name() const {
    switch (kind) {
      case Kind::S3:    return "S3";
      case Kind::S1xS2: return "S1xS2";
      case Kind::Lens:  return "L(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
    return "?";
  }

  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;
};

/// 2-bridge certificate b(p, q): p odd positive, gcd(p, q) = 1, 0 < q < p for
/// p > 1, and p = 1 forces q = 0 (the unknot). Certificates witness the
/// "no meridian disk" conditions of the piece definitions.
struct TwoBridgeFraction {
  std::int64_t p = 1;
  std::int64_t q = 0;

  friend bool operator==(const TwoBridgeFraction&, const TwoBridgeFraction&) = default;
};

/// True iff (p, q) satisfies the TwoBridgeFraction invariants.
inline bool is_valid_two_bridge(const TwoBridgeFraction& f) {
  if (f.p <= 0 || f.p % 2 == 0) return false;
  if (f.p == 1) return f.q == 0;
  return f.q > 0 && f.q < f.p && std::gcd(f.p, f.q) == 1;
}

/// Checked constructor for TwoBridgeFraction.
inline TwoBridgeFraction make_two_bridge(std::int64_t p, std::int64_t q) {
  TwoBridgeFraction f{p, q};
  if (!is_valid_two_bridge(f))
    throw std::invalid_argument("make_two_bridge: invalid fraction b(" + std::to_string(p) +
                                "," + std::to_string(q) + ")");
  return f;
}

/// b(p, q) is a non-trivial knot iff p >= 3.
inline bool is_nontrivial_two_bridge(const TwoBridgeFraction& f) { return f.p >= 3; }

/// Deduplication rule for certificates: b(p, q) ~ b(p', q') iff p = p' and
/// q' = q or q*q' = 1 (mod p). The classes are exactly {q, q^-1 mod p}.
inline bool two_bridge_equivalent(const TwoBridgeFraction& f1, const TwoBridgeFraction& f2) {
  if (f1.p != f2.p) return false;
  if (f1.p == 1) return true;  // both are the unknot
  std::int64_t p = f1.p;
  return (f2.q - f1.q) % p == 0 || (f1.q * f2.q) % p == 1 % p;
}

}  // namespace meridian
