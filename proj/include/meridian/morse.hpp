/**
 * \file morse.hpp
 * \brief Level-event traces: generation from assemblies, replay against the
 *        saddle grammar, and recognition of traces back into piece skeletons.
 *
 * Sweeping a valid construction bottom-to-top and recording what happens to
 * the level curves yields a trace. The normalized convention used here gives
 * every essential-level piece one block:
 *
 *     [crossings] [r x Saddle2] [r x Saddle1]
 *
 * with an InterfaceMark between consecutive blocks. A Saddle2 merges two
 * essential curves into one trivial curve, a Saddle1 splits a trivial curve
 * into two essential ones; crossings are only legal while no trivial curves
 * are present. Multi-piece traces start and end at an essential level
 * (essential_count = 2r); single-piece assemblies (types D/E/F) are read
 * edge to edge and contain no saddles at all.
 *
 * The bottom piece of a chain is glued in upside down, so its crossings
 * appear in reversed height order; likewise a type-E piece whose disks sit
 * in the lower solid torus. The recognizer undoes these reversals, which is
 * why round trips reproduce the piece-natural crossing placement.
 *
 * Saddles of types 3 and 4 are representable (the parser accepts them) but
 * replay always rejects them; surface maxima and minima are not representable
 * at all. Slopes are per-piece data, not events, so replay tracks curve
 * counts only and adopts the declared final slope once the counts agree.
 */
#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "meridian/assembler.hpp"
#include "meridian/pieces.hpp"
#include "meridian/torus_algebra.hpp"
#include "meridian/validation.hpp"

namespace meridian {

/// Curve census of one generic level.
struct LevelState {
  int essential_count = 0;
  std::optional<Slope> essential_slope;  ///< present iff essential_count > 0
  int trivial_count = 0;

  friend bool operator==(const LevelState&, const LevelState&) = default;
};

enum class MorseEventKind { saddle1, saddle2, saddle3, saddle4, crossing, interface_mark };

struct MorseEvent {
  int rank = 0;
  MorseEventKind kind = MorseEventKind::saddle1;
  int position = 0;  ///< only meaningful for crossing events

  friend bool operator==(const MorseEvent&, const MorseEvent&) = default;
};

struct MorseTrace {
  LevelState initial;
  std::vector<MorseEvent> events;
  LevelState final;

  friend bool operator==(const MorseTrace&, const MorseTrace&) = default;
};

/// Which standard family closes each end of the swept region.
enum class EndpointKind { annuli, meridian_disks };

struct TraceEndpoints {
  EndpointKind bottom_kind = EndpointKind::annuli;
  EndpointKind top_kind = EndpointKind::annuli;

  friend bool operator==(const TraceEndpoints&, const TraceEndpoints&) = default;
};

/// What recognition recovers from a trace: the decomposition shape, without
/// the geometric witness data (certificates, windings, offsets).
struct AssemblySkeleton {
  std::vector<PieceType> types;
  int r = 1;
  std::vector<std::vector<int>> crossing_positions;  ///< piece-natural order

  friend bool operator==(const AssemblySkeleton&, const AssemblySkeleton&) = default;
};

struct ReplayViolation {
  int rank = 0;  ///< offending event rank; last rank + 1 for final-state mismatch
  std::string rule;

  friend bool operator==(const ReplayViolation&, const ReplayViolation&) = default;
};

/// Outcome of replay: exactly one of state / violation is set.
struct ReplayResult {
  std::optional<LevelState> state;
  std::optional<ReplayViolation> violation;

  bool accepted() const { return state.has_value(); }
};

namespace detail {

/// True when a single type-E piece sits upside down: its meridian disks
/// bound in the lower solid torus, so the sweep meets them first.
inline bool e_piece_flipped(const Assembly& a) {
  return std::holds_alternative<PieceE>(a.pieces.front()) &&
         a.gamma.front() == a.manifold.lambda();
}

inline std::vector<int> crossing_positions_in_rank_order(const Piece& p) {
  std::vector<int> out;
  for (const CrossingEvent& c : piece_crossings(p)) out.push_back(c.position);
  return out;
}

}  // namespace detail

/// The closing families at the two ends of the swept region of an assembly.
inline TraceEndpoints assembly_endpoints(const Assembly& a) {
  detail::check_assembly_structure(a);
  auto closing_kind = [](const Piece& p) {
    return piece_type(p) == PieceType::C ? EndpointKind::meridian_disks : EndpointKind::annuli;
  };
  if (a.pieces.size() > 1)
    return {closing_kind(a.pieces.front()), closing_kind(a.pieces.back())};
  switch (piece_type(a.pieces.front())) {
    case PieceType::D:
      return {EndpointKind::annuli, EndpointKind::annuli};
    case PieceType::F:
      return {EndpointKind::meridian_disks, EndpointKind::meridian_disks};
    case PieceType::E:
      return detail::e_piece_flipped(a)
                 ? TraceEndpoints{EndpointKind::meridian_disks, EndpointKind::annuli}
                 : TraceEndpoints{EndpointKind::annuli, EndpointKind::meridian_disks};
    default:
      // Unreachable for valid assemblies; report the closing family anyway.
      return {closing_kind(a.pieces.front()), closing_kind(a.pieces.front())};
  }
}

/// Deterministic level-event trace of a valid assembly. Throws
/// InvalidAssembly when validate_assembly(a) is non-empty.
inline MorseTrace trace(const Assembly& a) {
  using namespace detail;
  ValidationReport violations = validate_assembly(a);
  if (!violations.empty())
    throw InvalidAssembly("trace requires a valid assembly", std::move(violations));

  MorseTrace t;
  int rank = 0;
  auto push = [&t, &rank](MorseEventKind kind, int position = 0) {
    t.events.push_back({++rank, kind, position});
  };

  if (a.pieces.size() == 1) {
    // Edge-to-edge reading: the surface is closed off on both sides, no
    // essential level survives to the boundary of the sweep.
    t.initial = LevelState{0, std::nullopt, 0};
    t.final = t.initial;
    std::vector<int> positions = crossing_positions_in_rank_order(a.pieces.front());
    if (e_piece_flipped(a)) std::reverse(positions.begin(), positions.end());
    for (int p : positions) push(MorseEventKind::crossing, p);
    return t;
  }

  t.initial = LevelState{2 * a.r, a.gamma.front(), 0};
  t.final = LevelState{2 * a.r, a.gamma.back(), 0};
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    if (i > 0) push(MorseEventKind::interface_mark);
    std::vector<int> positions = crossing_positions_in_rank_order(a.pieces[i]);
    if (i == 0) std::reverse(positions.begin(), positions.end());  // glued in upside down
    for (int p : positions) push(MorseEventKind::crossing, p);
    for (int k = 0; k < a.r; ++k) push(MorseEventKind::saddle2);
    for (int k = 0; k < a.r; ++k) push(MorseEventKind::saddle1);
  }
  return t;
}

/// Simulate a trace against the saddle grammar. Returns either the reached
/// final state or the first violation: strictly increasing ranks
/// ("rank-order"), Saddle2 needs two essential curves ("saddle2-underflow"),
/// Saddle1 needs a trivial curve ("no-trivial-curve"), saddles 3/4 are
/// always rejected ("saddle3-forbidden"/"saddle4-forbidden"), crossings are
/// illegal while trivial curves exist ("crossing-at-trivial-level"), and the
/// declared final counts must be reached ("final-mismatch").
inline ReplayResult replay(const MorseTrace& t) {
  int essential = t.initial.essential_count;
  int trivial = t.initial.trivial_count;
  int previous_rank = 0;

  auto fail = [](int rank, std::string rule) {
    ReplayResult r;
    r.violation = ReplayViolation{rank, std::move(rule)};
    return r;
  };

  for (const MorseEvent& e : t.events) {
    if (e.rank <= previous_rank) return fail(e.rank, "rank-order");
    previous_rank = e.rank;
    switch (e.kind) {
      case MorseEventKind::saddle1:
        if (trivial < 1) return fail(e.rank, "no-trivial-curve");
        trivial -= 1;
        essential += 2;
        break;
      case MorseEventKind::saddle2:
        if (essential < 2) return fail(e.rank, "saddle2-underflow");
        essential -= 2;
        trivial += 1;
        break;
      case MorseEventKind::saddle3:
        return fail(e.rank, "saddle3-forbidden");
      case MorseEventKind::saddle4:
        return fail(e.rank, "saddle4-forbidden");
      case MorseEventKind::crossing:
        if (trivial > 0) return fail(e.rank, "crossing-at-trivial-level");
        break;
      case MorseEventKind::interface_mark:
        break;
    }
  }

  if (essential != t.final.essential_count || trivial != t.final.trivial_count)
    return fail(previous_rank + 1, "final-mismatch");

  ReplayResult result;
  // Slopes are per-piece data, not events; once the counts agree the
  // declared final slope is adopted.
  result.state = LevelState{essential, essential > 0 ? t.final.essential_slope : std::nullopt,
                            trivial};
  return result;
}

/// Parse a replay-clean trace back into the decomposition it came from.
/// Multi-piece traces must consist of interface-separated blocks, each of
/// the strict form  crossings*, r x Saddle2, r x Saddle1  with one shared r;
/// zero-saddle traces are single pieces whose type is decided by the
/// endpoint families. Throws ParseError on anything else.
inline AssemblySkeleton recognize(const MorseTrace& t, const TraceEndpoints& endpoints) {
  ReplayResult rr = replay(t);
  if (!rr.accepted())
    throw ParseError("trace rejected by replay at rank " +
                     std::to_string(rr.violation->rank) + ": " + rr.violation->rule);

  // Segment the events on interface marks.
  std::vector<std::vector<MorseEvent>> segments(1);
  int saddle_total = 0;
  for (const MorseEvent& e : t.events) {
    if (e.kind == MorseEventKind::interface_mark) {
      segments.emplace_back();
      continue;
    }
    if (e.kind == MorseEventKind::saddle1 || e.kind == MorseEventKind::saddle2) ++saddle_total;
    segments.back().push_back(e);
  }

  AssemblySkeleton skeleton;

  if (saddle_total == 0) {
    if (segments.size() != 1)
      throw ParseError("interface marks require saddle blocks on both sides");
    if (t.initial.essential_count != 0 || t.initial.trivial_count != 0)
      throw ParseError("single-piece traces are read edge to edge from empty levels");
    std::vector<int> positions;
    for (const MorseEvent& e : segments[0]) positions.push_back(e.position);

    const bool bottom_disks = endpoints.bottom_kind == EndpointKind::meridian_disks;
    const bool top_disks = endpoints.top_kind == EndpointKind::meridian_disks;
    PieceType type =
        bottom_disks ? (top_disks ? PieceType::F : PieceType::E)
                     : (top_disks ? PieceType::E : PieceType::D);
    const int max_pos = positions.empty() ? 0 : *std::max_element(positions.begin(), positions.end());
    int r;
    if (max_pos == 0)
      r = 1;  // a disjoint knot leaves the sheet count unobservable
    else
      r = (type == PieceType::F) ? max_pos : (max_pos + 1) / 2;
    if (type == PieceType::E && bottom_disks)
      std::reverse(positions.begin(), positions.end());  // undo the flip
    skeleton.types = {type};
    skeleton.r = r;
    skeleton.crossing_positions = {std::move(positions)};
    return skeleton;
  }

  if (segments.size() < 2)
    throw ParseError("a chained trace needs at least two pieces");

  int r = -1;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    std::vector<int> positions;
    int s2 = 0;
    int s1 = 0;
    int phase = 0;  // 0 = crossings, 1 = saddle2 run, 2 = saddle1 run
    for (const MorseEvent& e : segments[i]) {
      switch (e.kind) {
        case MorseEventKind::crossing:
          if (phase != 0) throw ParseError("crossing inside a saddle block");
          positions.push_back(e.position);
          break;
        case MorseEventKind::saddle2:
          if (phase == 2) throw ParseError("saddle pinch after a reopening run");
          phase = 1;
          ++s2;
          break;
        case MorseEventKind::saddle1:
          if (phase == 0) throw ParseError("the first saddle of a block must be of type 2");
          phase = 2;
          ++s1;
          break;
        default:
          throw ParseError("unexpected event inside a block");
      }
    }
    if (s2 == 0) throw ParseError("every chained piece owns one saddle block");
    if (s1 != s2) throw ParseError("unbalanced saddle block");
    if (r == -1)
      r = s2;
    else if (r != s2)
      throw ParseError("saddle blocks disagree on the sheet count r");
    if (i == 0) std::reverse(positions.begin(), positions.end());  // undo the flip
    skeleton.crossing_positions.push_back(std::move(positions));
  }
  if (t.initial.essential_count != 2 * r || t.final.essential_count != 2 * r)
    throw ParseError("edge states do not match the saddle blocks");
  for (const std::vector<int>& positions : skeleton.crossing_positions)
    for (int p : positions)
      if (p < 1 || p > 2 * r) throw ParseError("crossing position outside 1..2r");

  skeleton.r = r;
  skeleton.types.assign(segments.size(), PieceType::A);
  skeleton.types.front() =
      endpoints.bottom_kind == EndpointKind::meridian_disks ? PieceType::C : PieceType::B;
  skeleton.types.back() =
      endpoints.top_kind == EndpointKind::meridian_disks ? PieceType::C : PieceType::B;
  return skeleton;
}

// ---------------------------------------------------------------------------
// Text form. One event per line, `<rank> S1|S2|S3|S4|X(<pos>)|IF`, framed by
// `initial`/`final` state lines: `<essential> <trivial> [<m>/<l>]`.
// ---------------------------------------------------------------------------

inline std::string serialize_trace(const MorseTrace& t) {
  std::ostringstream out;
  auto state_line = [&out](const char* tag, const LevelState& s) {
    out << tag << ' ' << s.essential_count << ' ' << s.trivial_count;
    if (s.essential_slope) out << ' ' << s.essential_slope->m << '/' << s.essential_slope->l;
    out << '\n';
  };
  state_line("initial", t.initial);
  for (const MorseEvent& e : t.events) {
    out << e.rank << ' ';
    switch (e.kind) {
      case MorseEventKind::saddle1: out << "S1"; break;
      case MorseEventKind::saddle2: out << "S2"; break;
      case MorseEventKind::saddle3: out << "S3"; break;
      case MorseEventKind::saddle4: out << "S4"; break;
      case MorseEventKind::crossing: out << "X(" << e.position << ')'; break;
      case MorseEventKind::interface_mark: out << "IF"; break;
    }
    out << '\n';
  }
  state_line("final", t.final);
  return out.str();
}

inline MorseTrace parse_trace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    // Tolerate blank lines and full-line comments, nothing else.
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    lines.push_back(trimmed);
  }
  if (lines.size() < 2) throw ParseError("trace needs initial and final state lines");

  auto parse_state = [](const std::string& s, const char* tag) {
    std::istringstream ls(s);
    std::string head;
    LevelState state;
    ls >> head;
    if (head != tag) throw ParseError(std::string("expected '") + tag + "' line, got: " + s);
    if (!(ls >> state.essential_count >> state.trivial_count))
      throw ParseError(std::string("malformed ") + tag + " state: " + s);
    std::string slope_token;
    if (ls >> slope_token) {
      std::int64_t m = 0, l = 0;
      if (std::sscanf(slope_token.c_str(), "%ld/%ld", &m, &l) != 2)
        throw ParseError("malformed slope in state line: " + s);
      state.essential_slope = Slope{m, l};
      std::string extra;
      if (ls >> extra) throw ParseError("trailing tokens in state line: " + s);
    }
    if (state.essential_count < 0 || state.trivial_count < 0)
      throw ParseError("negative curve count in state line: " + s);
    if (state.essential_slope.has_value() != (state.essential_count > 0))
      throw ParseError("slope must be present exactly when essential curves exist: " + s);
    return state;
  };

  MorseTrace t;
  t.initial = parse_state(lines.front(), "initial");
  t.final = parse_state(lines.back(), "final");
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    MorseEvent e;
    std::string token;
    if (!(ls >> e.rank >> token)) throw ParseError("malformed event line: " + lines[i]);
    std::string extra;
    if (ls >> extra) throw ParseError("trailing tokens in event line: " + lines[i]);
    if (token == "S1") {
      e.kind = MorseEventKind::saddle1;
    } else if (token == "S2") {
      e.kind = MorseEventKind::saddle2;
    } else if (token == "S3") {
      e.kind = MorseEventKind::saddle3;
    } else if (token == "S4") {
      e.kind = MorseEventKind::saddle4;
    } else if (token == "IF") {
      e.kind = MorseEventKind::interface_mark;
    } else if (token.size() >= 4 && token.rfind("X(", 0) == 0 && token.back() == ')') {
      e.kind = MorseEventKind::crossing;
      try {
        std::size_t used = 0;
        e.position = std::stoi(token.substr(2, token.size() - 3), &used);
        if (used != token.size() - 3) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("malformed crossing event: " + lines[i]);
      }
      if (e.position < 1) throw ParseError("crossing position must be positive: " + lines[i]);
    } else {
      throw ParseError("unknown event token: " + lines[i]);
    }
    t.events.push_back(e);
  }
  return t;
}

}  // namespace meridian
