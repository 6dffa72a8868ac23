/**
 * \file enumerate.hpp
 * \brief Search for assemblies realizing target invariants, plus the
 *        classification of connected genus-1 results.
 *
 * The search walks a canonical family of witnesses in lexicographic order
 * over (r, piece count, shape, slopes, crossings). Within that family the
 * measured invariants do not depend on which admissible slope sequence is
 * chosen (windings are derived from the slopes), so each shape is probed
 * with its first admissible sequence only. NotFound therefore certifies
 * exhaustion of the canonical family within the given bounds - never
 * nonexistence.
 *
 * Canonical witnesses are built as follows. Crossing-free pieces carry a
 * disjoint wrap of 2; crossing-carrying closed-type pieces (A-E) run two
 * legs, one ascending from position 1 and one descending from position 2r,
 * with leg lengths congruent to r mod 2r (so per-piece totals are multiples
 * of 2r, and the leg ends land on the distinct positions {1, 2r} and
 * {r, r+1}); type F keeps r = 1 and stacks crossings on its single sphere.
 * Certificates default to the minimal nontrivial witness (3, 1). Mid
 * offsets are 1 as soon as r >= 2, which links all nesting depths into one
 * connected surface. Crossing totals are even unless a type-F piece is
 * present: a closed knot meets a closed-complement surface evenly, and only
 * the sphere family over S1xS2 escapes that parity argument.
 */
#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "meridian/assembler.hpp"
#include "meridian/pieces.hpp"
#include "meridian/torus_algebra.hpp"
#include "meridian/validation.hpp"

namespace meridian {

/// Bounded search request: realize a component of the target genus and
/// boundary count over the given manifold.
struct SearchSpec {
  ManifoldSpec manifold;
  int target_genus = 1;
  int target_boundary = 0;
  int max_r = 2;
  int max_pieces = 3;
  std::int64_t max_slope_coeff = 5;
  int max_crossings = 4;
};

/// Search outcome: either a witness assembly, or the reason none was
/// produced (bounded exhaustion, or a grammar-level impossibility).
struct SearchOutcome {
  std::optional<Assembly> assembly;
  bool structurally_impossible = false;
  std::string reason;

  bool found() const { return assembly.has_value(); }
};

/// The classification of connected genus-1 surfaces by piece multiset.
enum class Genus1Class { a_plus_c_plus_c, b_plus_c, d, not_genus_1 };

inline std::string to_string(Genus1Class c) {
  switch (c) {
    case Genus1Class::a_plus_c_plus_c: return "A+C+C";
    case Genus1Class::b_plus_c: return "B+C";
    case Genus1Class::d: return "D";
    case Genus1Class::not_genus_1: return "not-genus-1";
  }
  return "not-genus-1";
}

namespace detail {

inline void check_search_spec(const SearchSpec& s) {
  if (s.target_genus < 0 || s.target_boundary < 0)
    throw std::invalid_argument("search targets must be nonnegative");
  if (s.max_r < 1 || s.max_pieces < 1 || s.max_slope_coeff < 1 || s.max_crossings < 0)
    throw std::invalid_argument("search bounds must be positive");
}

/// All canonical slopes with |m| and l bounded by max_coeff, in the fixed
/// enumeration order: l ascending; within one l, m = 0, 1, ..., then
/// -1, -2, ... Only coprime pairs appear, so every entry is canonical.
inline std::vector<Slope> canonical_slopes(std::int64_t max_coeff) {
  std::vector<Slope> out;
  out.push_back(Slope{1, 0});
  auto coprime = [](std::int64_t a, std::int64_t b) {
    a = a < 0 ? -a : a;
    while (b != 0) {
      const std::int64_t t = a % b;
      a = b;
      b = t;
    }
    return a == 1;
  };
  for (std::int64_t l = 1; l <= max_coeff; ++l) {
    for (std::int64_t m = 0; m <= max_coeff; ++m)
      if (coprime(m, l)) out.push_back(Slope{m, l});
    for (std::int64_t m = -1; m >= -max_coeff; --m)
      if (coprime(m, l)) out.push_back(Slope{m, l});
  }
  return out;
}

/// Piece-type patterns for a given chain length, in lexicographic order by
/// letter; manifold-gated types (E, F) are filtered out up front. Type F is
/// generated at r = 1 only: larger sphere families are disjoint unions whose
/// components are already realized at r = 1.
inline std::vector<std::vector<PieceType>> shapes_for(const ManifoldSpec& m, int count, int r) {
  std::vector<std::vector<PieceType>> shapes;
  if (count == 1) {
    shapes.push_back({PieceType::D});
    if (m.kind == ManifoldSpec::Kind::Lens) shapes.push_back({PieceType::E});
    if (m.kind == ManifoldSpec::Kind::S1xS2 && r == 1) shapes.push_back({PieceType::F});
    return shapes;
  }
  for (PieceType bottom : {PieceType::B, PieceType::C})
    for (PieceType top : {PieceType::B, PieceType::C}) {
      std::vector<PieceType> shape(static_cast<std::size_t>(count), PieceType::A);
      shape.front() = bottom;
      shape.back() = top;
      shapes.push_back(std::move(shape));
    }
  return shapes;
}

/// First admissible slope sequence for a shape, in the canonical order, or
/// nullopt when the coefficient bound leaves none. End conditions are the
/// kind-matched branches of 2.8.1(1)/(3); interior steps need distance >= 2.
inline std::optional<std::vector<Slope>> first_gamma(const ManifoldSpec& m,
                                                     const std::vector<PieceType>& shape,
                                                     const std::vector<Slope>& slopes) {
  const Slope lambda = m.lambda();
  const Slope mu = m.mu();
  const std::size_t count = shape.size();

  auto bottom_ok = [&](const Slope& s) {
    switch (shape.front()) {
      case PieceType::C: return s == lambda;
      case PieceType::B: return delta(s, lambda) >= 2;
      case PieceType::D: return delta(s, lambda) >= 2 && delta(s, mu) >= 2;
      case PieceType::E: return (s == lambda) != (s == mu);
      case PieceType::F: return s == lambda;
      default: return false;
    }
  };
  auto top_ok = [&](const Slope& s) {
    if (count == 1) return true;  // single pieces are fully checked above
    if (shape.back() == PieceType::C) return s == mu;
    return delta(s, mu) >= 2;
  };

  std::vector<Slope> gamma;
  auto dfs = [&](auto&& self, std::size_t index) -> bool {
    if (index == count) return true;
    for (const Slope& s : slopes) {
      if (index == 0 && !bottom_ok(s)) continue;
      if (index > 0 && delta(gamma.back(), s) < 2) continue;
      if (index + 1 == count && !top_ok(s)) continue;
      gamma.push_back(s);
      if (self(self, index + 1)) return true;
      gamma.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return gamma;
}

/// Two-leg canonical walk for closed-type pieces: arc 0 ascends from
/// position 1 (length r), arc 1 descends from position 2r (length n - r),
/// ranks interleaved. Requires n to be a positive multiple of 2r.
inline std::vector<CrossingEvent> walk_crossings(int r, int n) {
  std::vector<std::pair<int, int>> asc, desc;  // (arc, position)
  for (int i = 0; i < r; ++i) asc.emplace_back(0, i % (2 * r) + 1);
  for (int j = 0; j < n - r; ++j) desc.emplace_back(1, 2 * r - j % (2 * r));
  std::vector<CrossingEvent> crossings;
  std::size_t ia = 0, id = 0;
  while (ia < asc.size() || id < desc.size()) {
    if (ia < asc.size()) {
      crossings.push_back({static_cast<int>(crossings.size()) + 1, asc[ia].first,
                           asc[ia].second, Side::outer});
      ++ia;
    }
    if (id < desc.size()) {
      crossings.push_back({static_cast<int>(crossings.size()) + 1, desc[id].first,
                           desc[id].second, Side::inner});
      ++id;
    }
  }
  return crossings;
}

/// Type-F crossings at r = 1: alternate arcs and sides on the one sphere.
inline std::vector<CrossingEvent> f_crossings(int n) {
  std::vector<CrossingEvent> crossings;
  for (int i = 1; i <= n; ++i)
    crossings.push_back({i, (i - 1) % 2, 1, i % 2 == 1 ? Side::inner : Side::outer});
  return crossings;
}

/// Build one canonical piece. winding_a / winding_b carry the slope-derived
/// winding for the piece kinds that have caps; unused values are ignored.
inline Piece build_piece(PieceType type, int r, int n, std::int64_t winding_a,
                         std::int64_t winding_b) {
  const TwoBridgeFraction witness = make_two_bridge(3, 1);
  switch (type) {
    case PieceType::A: {
      PieceA a;
      a.r = r;
      a.lower_cert = witness;
      a.upper_cert = witness;
      if (n == 0)
        a.disjoint_wrap = 2;
      else
        a.crossings = walk_crossings(r, n);
      return Piece{a};
    }
    case PieceType::B: {
      PieceB b;
      b.r = r;
      b.annulus_winding = winding_a;
      b.lower_cert = witness;
      b.min_cert = witness;
      if (n == 0)
        b.disjoint_wrap = 2;
      else
        b.crossings = walk_crossings(r, n);
      return Piece{b};
    }
    case PieceType::C: {
      PieceC c;
      c.r = r;
      c.lower_cert = witness;
      c.crossings = walk_crossings(r, n);
      c.min_endpoint_disks = {r, r + 1};  // the walk's leg ends
      return Piece{c};
    }
    case PieceType::D: {
      PieceD d;
      d.r = r;
      d.winding_a = winding_a;
      d.winding_b = winding_b;
      d.max_cert = witness;
      d.min_cert = witness;
      if (n == 0)
        d.disjoint_wrap = 2;
      else
        d.crossings = walk_crossings(r, n);
      return Piece{d};
    }
    case PieceType::E: {
      PieceE e;
      e.r = r;
      e.winding_a = winding_a;
      e.max_cert = witness;
      e.crossings = walk_crossings(r, n);
      e.min_endpoint_disks = {r, r + 1};
      return Piece{e};
    }
    case PieceType::F: {
      PieceF f;
      f.r = 1;
      f.crossings = f_crossings(n);
      f.min_endpoint = {EndpointTouch{1, Side::inner}, EndpointTouch{1, Side::outer}};
      f.max_endpoint = {EndpointTouch{1, Side::inner}, EndpointTouch{1, Side::outer}};
      return Piece{f};
    }
  }
  throw std::logic_error("unreachable piece type");
}

/// Assemble the canonical witness for (shape, gamma, r, per-piece totals).
inline Assembly assemble_canonical(const ManifoldSpec& m, const std::vector<PieceType>& shape,
                                   const std::vector<Slope>& gamma, int r,
                                   const std::vector<int>& totals) {
  Assembly a;
  a.manifold = m;
  a.gamma = gamma;
  a.r = r;
  const Slope lambda = m.lambda();
  const Slope mu = m.mu();
  for (std::size_t i = 0; i < shape.size(); ++i) {
    std::int64_t wa = 2, wb = 2;
    switch (shape[i]) {
      case PieceType::B:
        wa = (i == 0) ? delta(gamma.front(), lambda) : delta(gamma.back(), mu);
        break;
      case PieceType::D:
        wa = delta(gamma.front(), lambda);
        wb = delta(gamma.front(), mu);
        break;
      case PieceType::E:
        wa = m.p;  // the meridian disks leave a p-times winding annulus family
        break;
      default:
        break;
    }
    a.pieces.push_back(build_piece(shape[i], r, totals[i], wa, wb));
    a.mid_offsets.push_back(MidOffset{r >= 2 ? 1 : 0, false});
  }
  return a;
}

/// Per-piece admissible crossing totals: closed types take multiples of 2r
/// (C and E must intersect, so zero is out for them); F at r = 1 takes any
/// count. Zero-crossing closed pieces use the disjoint wrap.
inline std::vector<int> admissible_totals(PieceType type, int r, int budget) {
  std::vector<int> out;
  if (type == PieceType::F) {
    for (int n = 0; n <= budget; ++n) out.push_back(n);
    return out;
  }
  if (type != PieceType::C && type != PieceType::E) out.push_back(0);
  for (int n = 2 * r; n <= budget; n += 2 * r) out.push_back(n);
  return out;
}

}  // namespace detail

/// All slope sequences gamma_0..gamma_n (n+1 entries, n >= 0 interfaces)
/// with coefficients bounded by max_coeff that satisfy the chain conditions:
/// 2.8.1(1) gamma_0 = lambda or delta(gamma_0, lambda) >= 2; 2.8.1(2)
/// consecutive distances >= 2; 2.8.1(3) gamma_n = mu or
/// delta(gamma_n, mu) >= 2. Entries are canonical, so the list is
/// duplicate-free; re-filtering by the same conditions is the identity.
inline std::vector<std::vector<Slope>> slope_sequences(const ManifoldSpec& m, int n,
                                                       std::int64_t max_coeff) {
  if (n < 0 || max_coeff < 1)
    throw std::invalid_argument("slope_sequences needs n >= 0 and max_coeff >= 1");
  const std::vector<Slope> slopes = detail::canonical_slopes(max_coeff);
  const Slope lambda = m.lambda();
  const Slope mu = m.mu();

  std::vector<std::vector<Slope>> out;
  std::vector<Slope> gamma;
  auto dfs = [&](auto&& self, int index) -> void {
    if (index == n + 1) {
      out.push_back(gamma);
      return;
    }
    for (const Slope& s : slopes) {
      if (index == 0 && !(s == lambda || delta(s, lambda) >= 2)) continue;
      if (index > 0 && delta(gamma.back(), s) < 2) continue;
      if (index == n && !(s == mu || delta(s, mu) >= 2)) continue;
      gamma.push_back(s);
      self(self, index + 1);
      gamma.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

/// Drive a callback over the canonical witness family in search order:
/// r ascending, then piece count, shape, first admissible slopes, crossing
/// totals and their compositions. The callback receives each candidate that
/// passes validate_assembly and knot_check; returning true stops the walk.
/// Candidate evaluation is pure, so streams over disjoint (r, count, shape)
/// cells could run concurrently; the lexicographic first match is what
/// find_construction reports either way.
template <typename Callback>
inline void for_each_canonical_assembly(const ManifoldSpec& m, int max_r, int max_pieces,
                                        std::int64_t max_slope_coeff, int max_crossings,
                                        Callback&& callback) {
  const std::vector<Slope> slopes = detail::canonical_slopes(max_slope_coeff);
  for (int r = 1; r <= max_r; ++r) {
    for (int count = 1; count <= max_pieces; ++count) {
      for (const std::vector<PieceType>& shape : detail::shapes_for(m, count, r)) {
        const std::optional<std::vector<Slope>> gamma = detail::first_gamma(m, shape, slopes);
        if (!gamma) continue;
        const bool has_f = shape.front() == PieceType::F;

        // Compositions of each admissible total, lexicographic.
        std::vector<int> totals(shape.size(), 0);
        for (int total = 0; total <= max_crossings; ++total) {
          if (!has_f && total % 2 != 0) continue;  // parity: knots cross evenly
          auto compose = [&](auto&& self, std::size_t index, int remaining) -> bool {
            if (index == shape.size()) {
              if (remaining != 0) return false;
              Assembly a = detail::assemble_canonical(m, shape, *gamma, r, totals);
              if (!validate_assembly(a).empty()) return false;
              const KnotReport knot = knot_check(a);
              if (!knot.is_single_knot || !knot.is_one_one) return false;
              return callback(a);
            }
            for (int n : detail::admissible_totals(shape[index], r, remaining)) {
              totals[index] = n;
              if (self(self, index + 1, remaining - n)) return true;
            }
            return false;
          };
          if (compose(compose, 0, total)) return;
        }
      }
    }
  }
}

/// Deterministic bounded search for an assembly whose surface has a
/// connected component of the target genus and boundary count. The S3
/// genus-0 case is a grammar-level impossibility (it would need a type-E or
/// type-F piece, which live over lens spaces and S1xS2 respectively) and is
/// reported as such; every other failure is bounded exhaustion.
inline SearchOutcome find_construction(const SearchSpec& s) {
  detail::check_search_spec(s);

  SearchOutcome outcome;
  if (s.manifold.kind == ManifoldSpec::Kind::S3 && s.target_genus == 0) {
    outcome.structurally_impossible = true;
    outcome.reason =
        "structurally impossible: a genus-0 component needs a type-E piece "
        "(lens spaces only) or a type-F piece (S1xS2 only), and neither "
        "exists over S3";
    return outcome;
  }

  for_each_canonical_assembly(
      s.manifold, s.max_r, s.max_pieces, s.max_slope_coeff, s.max_crossings,
      [&](const Assembly& a) {
        const SurfaceReport report = surface_invariants(a);
        for (const SurfaceComponent& c : report.components) {
          if (c.genus == s.target_genus && c.boundary_circles == s.target_boundary) {
            outcome.assembly = a;
            return true;
          }
        }
        return false;
      });

  if (!outcome.found())
    outcome.reason = "exhausted bounds: r <= " + std::to_string(s.max_r) +
                     ", pieces <= " + std::to_string(s.max_pieces) +
                     ", slope coefficients <= " + std::to_string(s.max_slope_coeff) +
                     ", crossings <= " + std::to_string(s.max_crossings);
  return outcome;
}

/// Classify a valid assembly whose surface is connected of genus 1 by its
/// piece multiset; anything else is not-genus-1. Within the grammar a
/// connected genus-1 surface forces the crossing-free characteristic to
/// vanish, which pins the multiset to {D}, {B, C}, or {A, C, C}; meeting a
/// genus-1 surface outside those classes would falsify the classification,
/// so it fails loudly instead of being folded into not-genus-1.
inline Genus1Class classify_genus1(const Assembly& a) {
  const SurfaceReport report = surface_invariants(a);  // throws on invalid input
  if (!report.connected || report.components.size() != 1 || report.components[0].genus != 1)
    return Genus1Class::not_genus_1;

  std::string letters;
  for (const Piece& p : a.pieces) letters.push_back(piece_letter(piece_type(p)));
  std::sort(letters.begin(), letters.end());
  if (letters == "D") return Genus1Class::d;
  if (letters == "BC") return Genus1Class::b_plus_c;
  if (letters == "ACC") return Genus1Class::a_plus_c_plus_c;
  throw MalformedAssembly("connected genus-1 surface outside the piece classification: " +
                          letters);
}

}  // namespace meridian
