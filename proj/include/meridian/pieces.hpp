/**
 * \file pieces.hpp
 * \brief The six piece types, their numbered validity conditions, and
 *        per-piece surface-fragment bookkeeping.
 *
 * A piece is one floor of a construction: a sub-surface sitting inside a
 * solid torus (or a union of two solid tori for the closed types D/E/F)
 * together with the portion of the knot running through it. The knot portion
 * consists of at most two monotone legs joined at an extremum; it meets the
 * surface in finitely many transverse points x_1..x_n, recorded bottom-to-top
 * as CrossingEvents.
 *
 * The surface part of each type is built from parallel families of standard
 * sheets:
 *
 *   type A: r interface pants below + r interface pants above       chi -2r
 *   type B: r interface pants below + r winding cap annuli above    chi -r
 *   type C: r interface pants below + 2r meridian disks above       chi +r
 *   type D: r cap annuli below + r cap annuli above                 chi  0
 *   type E: r cap annuli below + 2r meridian disks above            chi +2r
 *   type F: r vertical spheres (two disk halves each)               chi +2r
 *
 * Within a family the sheets are parallel and nested, so sheet i necessarily
 * owns the vertical positions i and 2r+1-i (type F owns one position per
 * sphere). Each crossing punctures the surface once, so the fragment's Euler
 * characteristic is the family total minus n.
 *
 * Geometric conditions of the form "there is no disk ..." are undecidable
 * from combinatorial data alone, so each extremum-containing subarc carries a
 * 2-bridge certificate that must be nontrivial, and the slide conditions are
 * checked through their combinatorial shadow: first/last crossings of the two
 * legs must sit on distinct positions, and a leg may never cross the same
 * position twice in a row. The certificate is conservative: it may reject a
 * valid geometric configuration, it never accepts an invalid one.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "meridian/torus_algebra.hpp"
#include "meridian/validation.hpp"

namespace meridian {

/// Which side of a sheet the knot enters at a crossing. Only type F's
/// endpoint condition 2.7.1(2) consumes this; elsewhere it is informational.
enum class Side { inner, outer };

inline std::string to_string(Side s) { return s == Side::inner ? "in" : "out"; }

/// One transverse intersection point x_i of the knot with the surface.
struct CrossingEvent {
  int height_rank = 0;  ///< 1-based index in the bottom-to-top order x_1..x_n
  int arc_id = 0;       ///< which monotone leg of the knot carries the point
  int position = 0;     ///< vertical annulus / disk / sphere met, 1..2r (1..r for F)
  Side side = Side::inner;

  friend bool operator==(const CrossingEvent&, const CrossingEvent&) = default;
};

/// Open floor: interface circles both below and above. Only appears in the
/// middle of a chain.
struct PieceA {
  int r = 1;
  TwoBridgeFraction lower_cert;  ///< condition 2.2.1(1), the x_1-end subarc
  TwoBridgeFraction upper_cert;  ///< condition 2.2.1(4), the x_n-end subarc
  std::vector<CrossingEvent> crossings;
  std::optional<int> disjoint_wrap;  ///< condition 2.2.1(6), only when n = 0

  friend bool operator==(const PieceA&, const PieceA&) = default;
};

/// Bottom/top end floor closing the chain with winding cap annuli; the knot
/// has one extremum here.
struct PieceB {
  int r = 1;
  std::int64_t annulus_winding = 2;  ///< longitudinal winding of each cap annulus
  TwoBridgeFraction lower_cert;      ///< condition 2.3.1(1), the interface-end subarc
  TwoBridgeFraction min_cert;        ///< condition 2.3.1(4), the extremum subarc
  std::vector<CrossingEvent> crossings;
  std::optional<int> disjoint_wrap;  ///< condition 2.3.1(6)

  friend bool operator==(const PieceB&, const PieceB&) = default;
};

/// End floor closing the chain with meridian disks; the knot has one extremum
/// here and must intersect the surface.
struct PieceC {
  int r = 1;
  TwoBridgeFraction lower_cert;  ///< condition 2.4.1(1)
  std::vector<CrossingEvent> crossings;
  std::pair<int, int> min_endpoint_disks{1, 2};  ///< condition 2.4.1(4), disks met by the extremum subarc

  friend bool operator==(const PieceC&, const PieceC&) = default;
};

/// Closed single-floor type: cap annuli below and above, knot is a closed
/// curve with one maximum (below) and one minimum (above).
struct PieceD {
  int r = 1;
  std::int64_t winding_a = 2;  ///< winding of the lower cap annuli
  std::int64_t winding_b = 2;  ///< winding of the upper cap annuli
  TwoBridgeFraction max_cert;  ///< condition 2.5.1(1), the maximum subarc
  TwoBridgeFraction min_cert;  ///< condition 2.5.1(4), the minimum subarc
  std::vector<CrossingEvent> crossings;
  std::optional<int> disjoint_wrap;  ///< condition 2.5.1(6)

  friend bool operator==(const PieceD&, const PieceD&) = default;
};

/// Closed single-floor type: cap annuli below, meridian disks above; only
/// realizable over a lens space. The knot must intersect the surface.
struct PieceE {
  int r = 1;
  std::int64_t winding_a = 2;  ///< winding of the lower cap annuli
  TwoBridgeFraction max_cert;  ///< condition 2.6.1(1), the maximum subarc
  std::vector<CrossingEvent> crossings;
  std::pair<int, int> min_endpoint_disks{1, 2};  ///< condition 2.6.1(4)

  friend bool operator==(const PieceE&, const PieceE&) = default;
};

/// One endpoint contact of an extremum subarc with a sphere of a type-F
/// piece: which sphere, and from which side.
struct EndpointTouch {
  int position = 1;
  Side side = Side::inner;

  friend bool operator==(const EndpointTouch&, const EndpointTouch&) = default;
};

/// Closed single-floor type over S^1 x S^2: r parallel vertical spheres.
/// Positions index spheres, so they range over 1..r, not 1..2r.
struct PieceF {
  int r = 1;
  std::vector<CrossingEvent> crossings;
  std::pair<EndpointTouch, EndpointTouch> min_endpoint;  ///< condition 2.7.1(2), minimum subarc
  std::pair<EndpointTouch, EndpointTouch> max_endpoint;  ///< condition 2.7.1(2), maximum subarc

  friend bool operator==(const PieceF&, const PieceF&) = default;
};

using Piece = std::variant<PieceA, PieceB, PieceC, PieceD, PieceE, PieceF>;

/// Discriminator mirroring the variant alternatives.
enum class PieceType { A, B, C, D, E, F };

inline PieceType piece_type(const Piece& p) {
  return static_cast<PieceType>(p.index());
}

inline char piece_letter(PieceType t) { return static_cast<char>('A' + static_cast<int>(t)); }
inline char piece_letter(const Piece& p) { return piece_letter(piece_type(p)); }

inline int piece_r(const Piece& p) {
  return std::visit([](const auto& q) { return q.r; }, p);
}

inline const std::vector<CrossingEvent>& piece_crossings(const Piece& p) {
  return std::visit([](const auto& q) -> const std::vector<CrossingEvent>& { return q.crossings; }, p);
}

inline std::vector<CrossingEvent>& piece_crossings(Piece& p) {
  return std::visit([](auto& q) -> std::vector<CrossingEvent>& { return q.crossings; }, p);
}

/// Surface bookkeeping for one piece in isolation: Euler characteristic with
/// punctures included, interface circle counts, and which sheet of each
/// parallel family owns each vertical position.
struct FragmentReport {
  int chi = 0;
  int bottom_interface_circles = 0;
  int top_interface_circles = 0;
  int meridian_boundaries = 0;          ///< = number of crossings
  std::map<int, int> ownership;         ///< lower family: position -> sheet id (1..r)
  std::map<int, int> upper_ownership;   ///< upper family: local position -> sheet id (r+1..)

  friend bool operator==(const FragmentReport&, const FragmentReport&) = default;
};

namespace detail {

/// The crossings of one leg, in height order.
using Leg = std::vector<CrossingEvent>;

/// Split a crossing list into its (at most two) legs, preserving height
/// order. Throws MalformedPiece if more than two distinct arc ids appear.
inline std::vector<Leg> split_legs(const std::vector<CrossingEvent>& crossings) {
  std::vector<int> ids;
  std::vector<Leg> legs;
  for (const CrossingEvent& c : crossings) {
    auto it = std::find(ids.begin(), ids.end(), c.arc_id);
    std::size_t k;
    if (it == ids.end()) {
      if (ids.size() == 2)
        throw MalformedPiece("piece has more than two distinct arc ids");
      k = ids.size();
      ids.push_back(c.arc_id);
      legs.emplace_back();
    } else {
      k = static_cast<std::size_t>(it - ids.begin());
    }
    legs[k].push_back(c);
  }
  return legs;
}

/// Structural checks common to every type: r >= 1, ranks consecutive from 1
/// in list order, positions within 1..max_position, wrap only when disjoint,
/// at most two legs. Throws MalformedPiece.
inline void check_structure(int r, const std::vector<CrossingEvent>& crossings,
                            int max_position, const std::optional<int>& wrap) {
  if (r < 1) throw MalformedPiece("piece has r < 1");
  int expected_rank = 1;
  for (const CrossingEvent& c : crossings) {
    if (c.height_rank != expected_rank++)
      throw MalformedPiece("height ranks must be distinct and consecutive from 1");
    if (c.position < 1 || c.position > max_position)
      throw MalformedPiece("crossing position out of range");
  }
  if (wrap.has_value() && !crossings.empty())
    throw MalformedPiece("disjoint_wrap is only meaningful with no crossings");
  split_legs(crossings);  // enforces the two-leg bound
}

inline void require_endpoint_range(std::pair<int, int> disks, int max_position) {
  if (disks.first < 1 || disks.first > max_position || disks.second < 1 ||
      disks.second > max_position)
    throw MalformedPiece("endpoint disk index out of range");
}

/// Issue emitter that keeps one issue per distinct code.
struct IssueSink {
  ValidationReport report;

  void emit(std::string code, std::string detail) {
    if (!has_code(report, code)) report.push_back({std::move(code), -1, std::move(detail)});
  }
};

/// Condition (2)/(5) of the open types: the crossings nearest a shared
/// extremum (or interface) must sit on distinct positions. Vacuous unless
/// both legs cross.
inline void check_end_distinct(IssueSink& sink, const std::vector<Leg>& legs, bool first_end,
                               const std::string& code) {
  if (legs.size() < 2) return;
  const CrossingEvent& a = first_end ? legs[0].front() : legs[0].back();
  const CrossingEvent& b = first_end ? legs[1].front() : legs[1].back();
  if (a.position == b.position)
    sink.emit(code, "both legs meet position " + std::to_string(a.position) +
                        (first_end ? " at their first crossings" : " at their last crossings"));
}

/// Condition (3) of every type: a leg may not cross the same position twice
/// in a row (a parallel return). Type F with r = 1 is exempt: there the
/// return wraps the S^1 direction instead of running parallel.
inline void check_no_parallel_return(IssueSink& sink, const std::vector<Leg>& legs,
                                     const std::string& code) {
  for (const Leg& leg : legs)
    for (std::size_t i = 1; i < leg.size(); ++i)
      if (leg[i].position == leg[i - 1].position) {
        sink.emit(code, "leg crosses position " + std::to_string(leg[i].position) +
                            " twice in a row");
        return;
      }
}

inline void check_cert(IssueSink& sink, const TwoBridgeFraction& cert, const std::string& code,
                       const std::string& which) {
  if (!is_nontrivial_two_bridge(cert))
    sink.emit(code, which + " certificate (" + std::to_string(cert.p) + "," +
                        std::to_string(cert.q) + ") is trivial");
}

inline void check_wrap(IssueSink& sink, const std::optional<int>& wrap, const std::string& code) {
  if (!wrap.has_value() || *wrap < 2)
    sink.emit(code, "disjoint knot portion must wrap its solid torus at least twice");
}

inline void check_winding(IssueSink& sink, std::int64_t winding, const std::string& which) {
  if (winding < 2)
    sink.emit("winding-ge-2", which + " is " + std::to_string(winding) + ", must be >= 2");
}

/// Declared endpoint disks for the extremum subarc of types C/E must agree
/// with the last crossings of the two legs whenever both legs cross.
inline void check_declared_disks(IssueSink& sink, const std::vector<Leg>& legs,
                                 std::pair<int, int> declared) {
  if (legs.size() < 2) return;
  std::set<int> derived{legs[0].back().position, legs[1].back().position};
  std::set<int> given{declared.first, declared.second};
  if (derived != given)
    sink.emit("endpoint-declaration-mismatch",
              "declared extremum endpoints disagree with the legs' last crossings");
}

inline bool touches_distinct(const std::pair<EndpointTouch, EndpointTouch>& e) {
  return e.first.position != e.second.position || e.first.side != e.second.side;
}

/// Declared endpoint touches for a type-F extremum subarc must agree with
/// the nearest crossings of the two legs whenever both legs cross.
inline void check_declared_touches(IssueSink& sink, const std::vector<Leg>& legs, bool first_end,
                                   const std::pair<EndpointTouch, EndpointTouch>& declared) {
  if (legs.size() < 2) return;
  const CrossingEvent& a = first_end ? legs[0].front() : legs[0].back();
  const CrossingEvent& b = first_end ? legs[1].front() : legs[1].back();
  auto key = [](int position, Side side) { return position * 2 + (side == Side::outer ? 1 : 0); };
  std::set<int> derived{key(a.position, a.side), key(b.position, b.side)};
  std::set<int> given{key(declared.first.position, declared.first.side),
                      key(declared.second.position, declared.second.side)};
  if (derived != given)
    sink.emit("endpoint-declaration-mismatch",
              "declared extremum touches disagree with the legs' nearest crossings");
}

}  // namespace detail

/// Check one piece against its numbered conditions. Returns the violated
/// condition identifiers (empty = valid). Throws MalformedPiece on structural
/// breakage (out-of-range positions, bad height ranks, wrap next to
/// crossings, more than two legs).
inline ValidationReport validate_piece(const Piece& piece) {
  using namespace detail;
  IssueSink sink;

  if (const auto* a = std::get_if<PieceA>(&piece)) {
    check_structure(a->r, a->crossings, 2 * a->r, a->disjoint_wrap);
    std::vector<Leg> legs = split_legs(a->crossings);
    if (a->crossings.empty()) {
      check_wrap(sink, a->disjoint_wrap, "2.2.1(6)");
    } else {
      check_cert(sink, a->lower_cert, "2.2.1(1)", "lower");
      check_end_distinct(sink, legs, /*first_end=*/true, "2.2.1(2)");
      check_no_parallel_return(sink, legs, "2.2.1(3)");
      check_cert(sink, a->upper_cert, "2.2.1(4)", "upper");
      check_end_distinct(sink, legs, /*first_end=*/false, "2.2.1(5)");
    }
  } else if (const auto* b = std::get_if<PieceB>(&piece)) {
    check_structure(b->r, b->crossings, 2 * b->r, b->disjoint_wrap);
    std::vector<Leg> legs = split_legs(b->crossings);
    check_winding(sink, b->annulus_winding, "cap annulus winding");
    if (b->crossings.empty()) {
      check_wrap(sink, b->disjoint_wrap, "2.3.1(6)");
    } else {
      check_cert(sink, b->lower_cert, "2.3.1(1)", "lower");
      check_end_distinct(sink, legs, /*first_end=*/true, "2.3.1(2)");
      check_no_parallel_return(sink, legs, "2.3.1(3)");
      check_cert(sink, b->min_cert, "2.3.1(4)", "extremum");
      check_end_distinct(sink, legs, /*first_end=*/false, "2.3.1(5)");
    }
  } else if (const auto* c = std::get_if<PieceC>(&piece)) {
    check_structure(c->r, c->crossings, 2 * c->r, std::nullopt);
    require_endpoint_range(c->min_endpoint_disks, 2 * c->r);
    if (c->crossings.empty()) {
      // The extremum subarc would run from disk to disk without crossing the
      // surface, which is impossible; no other condition is meaningful.
      sink.emit("C-must-intersect", "the knot necessarily intersects a type-C surface");
      return sink.report;
    }
    std::vector<Leg> legs = split_legs(c->crossings);
    check_cert(sink, c->lower_cert, "2.4.1(1)", "lower");
    check_end_distinct(sink, legs, /*first_end=*/true, "2.4.1(2)");
    check_no_parallel_return(sink, legs, "2.4.1(3)");
    if (c->min_endpoint_disks.first == c->min_endpoint_disks.second)
      sink.emit("2.4.1(4)", "extremum subarc endpoints must lie on two different disks");
    check_declared_disks(sink, legs, c->min_endpoint_disks);
  } else if (const auto* d = std::get_if<PieceD>(&piece)) {
    check_structure(d->r, d->crossings, 2 * d->r, d->disjoint_wrap);
    std::vector<Leg> legs = split_legs(d->crossings);
    check_winding(sink, d->winding_a, "lower cap winding");
    check_winding(sink, d->winding_b, "upper cap winding");
    if (d->crossings.empty()) {
      check_wrap(sink, d->disjoint_wrap, "2.5.1(6)");
    } else {
      check_cert(sink, d->max_cert, "2.5.1(1)", "maximum");
      check_end_distinct(sink, legs, /*first_end=*/true, "2.5.1(2)");
      check_no_parallel_return(sink, legs, "2.5.1(3)");
      check_cert(sink, d->min_cert, "2.5.1(4)", "minimum");
      check_end_distinct(sink, legs, /*first_end=*/false, "2.5.1(5)");
    }
  } else if (const auto* e = std::get_if<PieceE>(&piece)) {
    check_structure(e->r, e->crossings, 2 * e->r, std::nullopt);
    require_endpoint_range(e->min_endpoint_disks, 2 * e->r);
    if (e->crossings.empty()) {
      // Symmetric to type C: the closed knot must pass through the disks.
      sink.emit("E-must-intersect", "the knot necessarily intersects a type-E surface");
      return sink.report;
    }
    std::vector<Leg> legs = split_legs(e->crossings);
    check_winding(sink, e->winding_a, "lower cap winding");
    check_cert(sink, e->max_cert, "2.6.1(1)", "maximum");
    check_end_distinct(sink, legs, /*first_end=*/true, "2.6.1(2)");
    check_no_parallel_return(sink, legs, "2.6.1(3)");
    if (e->min_endpoint_disks.first == e->min_endpoint_disks.second)
      sink.emit("2.6.1(4)", "extremum subarc endpoints must lie on two different disks");
    check_declared_disks(sink, legs, e->min_endpoint_disks);
  } else {
    const PieceF& f = std::get<PieceF>(piece);
    check_structure(f.r, f.crossings, f.r, std::nullopt);
    if (f.min_endpoint.first.position < 1 || f.min_endpoint.first.position > f.r ||
        f.min_endpoint.second.position < 1 || f.min_endpoint.second.position > f.r ||
        f.max_endpoint.first.position < 1 || f.max_endpoint.first.position > f.r ||
        f.max_endpoint.second.position < 1 || f.max_endpoint.second.position > f.r)
      throw MalformedPiece("endpoint sphere index out of range");
    std::vector<Leg> legs = split_legs(f.crossings);
    if (f.r >= 2) check_no_parallel_return(sink, legs, "2.7.1(1)");
    if (!touches_distinct(f.min_endpoint))
      sink.emit("2.7.1(2)", "minimum subarc must end on different spheres or different sides");
    if (!touches_distinct(f.max_endpoint))
      sink.emit("2.7.1(2)", "maximum subarc must end on different spheres or different sides");
    if (!f.crossings.empty()) {
      check_declared_touches(sink, legs, /*first_end=*/false, f.min_endpoint);
      check_declared_touches(sink, legs, /*first_end=*/true, f.max_endpoint);
    }
  }
  return sink.report;
}

/// Compute the fragment bookkeeping of one piece. Sheet ids: the lower family
/// uses 1..r, the upper family r+1 upward; sheet i of a nested family owns
/// positions i and 2r+1-i, a disk family owns one position per disk, and a
/// type-F sphere owns its own position. Throws MalformedPiece on structural
/// breakage, like validate_piece.
inline FragmentReport fragment_report(const Piece& piece) {
  using namespace detail;
  const int r = piece_r(piece);
  const int n = static_cast<int>(piece_crossings(piece).size());
  const PieceType t = piece_type(piece);

  // Run the structural layer so a malformed piece throws here too.
  switch (t) {
    case PieceType::A: {
      const auto& a = std::get<PieceA>(piece);
      check_structure(a.r, a.crossings, 2 * a.r, a.disjoint_wrap);
      break;
    }
    case PieceType::B: {
      const auto& b = std::get<PieceB>(piece);
      check_structure(b.r, b.crossings, 2 * b.r, b.disjoint_wrap);
      break;
    }
    case PieceType::C: {
      const auto& c = std::get<PieceC>(piece);
      check_structure(c.r, c.crossings, 2 * c.r, std::nullopt);
      require_endpoint_range(c.min_endpoint_disks, 2 * c.r);
      break;
    }
    case PieceType::D: {
      const auto& d = std::get<PieceD>(piece);
      check_structure(d.r, d.crossings, 2 * d.r, d.disjoint_wrap);
      break;
    }
    case PieceType::E: {
      const auto& e = std::get<PieceE>(piece);
      check_structure(e.r, e.crossings, 2 * e.r, std::nullopt);
      require_endpoint_range(e.min_endpoint_disks, 2 * e.r);
      break;
    }
    case PieceType::F: {
      const auto& f = std::get<PieceF>(piece);
      check_structure(f.r, f.crossings, f.r, std::nullopt);
      break;
    }
  }

  FragmentReport rep;
  rep.meridian_boundaries = n;

  auto nested_owner = [r](int position) { return std::min(position, 2 * r + 1 - position); };

  switch (t) {
    case PieceType::A:
      rep.chi = -2 * r - n;
      rep.bottom_interface_circles = r;
      rep.top_interface_circles = r;
      for (int p = 1; p <= 2 * r; ++p) {
        rep.ownership[p] = nested_owner(p);
        rep.upper_ownership[p] = r + nested_owner(p);
      }
      break;
    case PieceType::B:
      rep.chi = -r - n;
      rep.bottom_interface_circles = r;
      for (int p = 1; p <= 2 * r; ++p) {
        rep.ownership[p] = nested_owner(p);
        rep.upper_ownership[p] = r + nested_owner(p);
      }
      break;
    case PieceType::C:
      rep.chi = r - n;
      rep.bottom_interface_circles = r;
      for (int p = 1; p <= 2 * r; ++p) {
        rep.ownership[p] = nested_owner(p);
        rep.upper_ownership[p] = r + p;  // one meridian disk per position
      }
      break;
    case PieceType::D:
      rep.chi = -n;
      for (int p = 1; p <= 2 * r; ++p) {
        rep.ownership[p] = nested_owner(p);
        rep.upper_ownership[p] = r + nested_owner(p);
      }
      break;
    case PieceType::E:
      rep.chi = 2 * r - n;
      for (int p = 1; p <= 2 * r; ++p) {
        rep.ownership[p] = nested_owner(p);
        rep.upper_ownership[p] = r + p;
      }
      break;
    case PieceType::F:
      rep.chi = 2 * r - n;
      for (int p = 1; p <= r; ++p) {
        rep.ownership[p] = p;  // each sphere owns exactly its own position
      }
      break;
  }
  return rep;
}

}  // namespace meridian
