/**
 * \file assembler.hpp
 * \brief Gluing pieces into a full (manifold, knot, surface) datum, global
 *        validity conditions, and surface invariants computed two ways.
 *
 * An assembly stacks pieces along the Heegaard torus of the target manifold.
 * gamma lists the essential slope of each piece's level, bottom to top; a
 * single piece of type D/E/F fills the whole manifold, while a chain starts
 * and ends with a closing piece (B or C) and has only open pieces (A) in the
 * middle.
 *
 * Two kinds of interface exist, with different gluing freedom:
 *
 *  - the mid-interface inside each piece, where the upper family's 2r
 *    boundary curves meet the lower family's 2r positions: a free cyclic
 *    offset (optionally reflected) per piece, recorded in mid_offsets;
 *  - the interface between adjacent pieces, where r nested trivial circles
 *    meet r nested trivial circles: nesting forces depth-to-depth gluing,
 *    so no parameter exists here.
 *
 * Surface invariants are computed twice by design. surface_invariants works
 * at sheet granularity (chi is additive when gluing along circles);
 * cell_complex_chi rebuilds every sheet as an explicit cell complex, performs
 * the same identifications vertex-by-vertex and edge-by-edge, and counts
 * V - E + F. The two must agree on every valid assembly.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "meridian/pieces.hpp"
#include "meridian/torus_algebra.hpp"
#include "meridian/validation.hpp"

namespace meridian {

/// Identification of a piece's upper family boundary curves with the lower
/// family's 2r positions: local curve x lands on global position
/// ((x-1+offset) mod 2r)+1, or ((offset-(x-1)) mod 2r)+1 when reflected.
struct MidOffset {
  int offset = 0;
  bool reflect = false;

  friend bool operator==(const MidOffset&, const MidOffset&) = default;
};

/// A full construction datum over one manifold.
struct Assembly {
  ManifoldSpec manifold;
  std::vector<Slope> gamma;      ///< slope at each piece's essential level
  std::vector<Piece> pieces;     ///< bottom to top; same length as gamma
  std::vector<MidOffset> mid_offsets;  ///< one per piece
  int r = 1;                     ///< global sheet count per family

  friend bool operator==(const Assembly&, const Assembly&) = default;
};

struct SurfaceComponent {
  int chi = 0;
  int boundary_circles = 0;
  int genus = 0;

  friend bool operator==(const SurfaceComponent&, const SurfaceComponent&) = default;
};

struct SurfaceReport {
  std::vector<SurfaceComponent> components;
  int total_boundary = 0;   ///< = total number of crossings
  bool connected = false;
  bool orientable = true;   ///< every construction surface is orientable

  friend bool operator==(const SurfaceReport&, const SurfaceReport&) = default;
};

struct KnotReport {
  bool is_single_knot = false;
  bool is_one_one = false;

  friend bool operator==(const KnotReport&, const KnotReport&) = default;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline int mod_positive(int value, int modulus) {
  int m = value % modulus;
  return m < 0 ? m + modulus : m;
}

/// Global position reached by the upper family's local curve x.
inline int apply_mid_offset(const MidOffset& o, int local, int two_r) {
  if (o.reflect) return mod_positive(o.offset - (local - 1), two_r) + 1;
  return mod_positive(local - 1 + o.offset, two_r) + 1;
}

/// Local curve landing on global position p (inverse of apply_mid_offset).
inline int invert_mid_offset(const MidOffset& o, int global, int two_r) {
  if (o.reflect) return mod_positive(o.offset - (global - 1), two_r) + 1;
  return mod_positive(global - 1 - o.offset, two_r) + 1;
}

/// Structural layer: throws MalformedAssembly on shape breakage. Does not
/// look inside pieces (validate_piece handles that, throwing MalformedPiece).
inline void check_assembly_structure(const Assembly& a) {
  if (a.pieces.empty()) throw MalformedAssembly("assembly has no pieces");
  if (a.gamma.size() != a.pieces.size())
    throw MalformedAssembly("gamma must list one slope per piece");
  if (a.mid_offsets.size() != a.pieces.size())
    throw MalformedAssembly("mid_offsets must list one entry per piece");
  if (a.r < 1) throw MalformedAssembly("assembly has r < 1");
  for (const Piece& p : a.pieces)
    if (piece_r(p) != a.r)
      throw MalformedAssembly("all pieces must share the assembly's sheet count r");
  for (const Slope& s : a.gamma)
    if (!is_canonical(s)) throw MalformedAssembly("gamma slopes must be canonical");
}

/// Number of upper-family sheets of one piece (0 when the type has no
/// separate upper family).
inline int upper_family_size(const Piece& p, int r) {
  switch (piece_type(p)) {
    case PieceType::A:
    case PieceType::B:
    case PieceType::D:
      return r;
    case PieceType::C:
    case PieceType::E:
      return 2 * r;
    case PieceType::F:
      return 0;
  }
  return 0;
}

}  // namespace detail

/// Check every global condition of an assembly: the slope conditions
/// 2.8.1(1)-(3), the piece-type pattern, per-piece conditions (issues are
/// tagged with the piece index), end-piece winding consistency, and arc
/// continuity. Violations that can only be artifacts of an earlier violation
/// in the same end chain are suppressed (e.g. a failed 2.8.1(1) silences the
/// first-piece kind and winding checks).
inline ValidationReport validate_assembly(const Assembly& a) {
  using namespace detail;
  check_assembly_structure(a);

  ValidationReport report;
  auto emit = [&report](std::string code, int piece, std::string detail) {
    for (const ValidationIssue& issue : report)
      if (issue.code == code && issue.piece == piece) return;
    report.push_back({std::move(code), piece, std::move(detail)});
  };

  // Per-piece layer first; structural piece problems throw out of here.
  for (std::size_t i = 0; i < a.pieces.size(); ++i)
    for (ValidationIssue issue : validate_piece(a.pieces[i]))
      emit(std::move(issue.code), static_cast<int>(i), std::move(issue.detail));

  const Slope lambda = a.manifold.lambda();
  const Slope mu = a.manifold.mu();
  const std::size_t count = a.pieces.size();
  const Slope& first_slope = a.gamma.front();
  const Slope& last_slope = a.gamma.back();

  if (count == 1) {
    const Piece& piece = a.pieces.front();
    switch (piece_type(piece)) {
      case PieceType::F: {
        // Two families of meridian disks force R_a cup R_b = S^1 x S^2; the
        // manifold error dominates everything else about the assembly.
        if (a.manifold.kind != ManifoldSpec::Kind::S1xS2) {
          emit("F-requires-S1xS2", -1, "type F closes both solid tori with disks");
          return report;
        }
        if (first_slope != lambda)
          emit("single-piece-kind", -1,
               "type F needs the level slope to bound disks on both sides");
        break;
      }
      case PieceType::E: {
        if (a.manifold.kind != ManifoldSpec::Kind::Lens) {
          emit("E-requires-lens", -1,
               "type E mixes disks and windings, impossible in S3 and S1xS2");
          return report;
        }
        const bool at_lambda = first_slope == lambda;
        const bool at_mu = first_slope == mu;
        if (at_lambda == at_mu) {
          emit("single-piece-kind", -1,
               "type E needs the level slope to bound disks on exactly one side");
        } else {
          const auto& e = std::get<PieceE>(piece);
          if (e.winding_a >= 2 && e.winding_a != a.manifold.p)
            emit("winding-slope-mismatch", 0,
                 "cap winding " + std::to_string(e.winding_a) + " != delta(lambda, mu) = " +
                     std::to_string(a.manifold.p));
        }
        break;
      }
      case PieceType::D: {
        if (first_slope == lambda || first_slope == mu) {
          emit("single-piece-kind", -1,
               "type D needs an essential level on both sides, gamma_0 bounds a disk");
          break;
        }
        const std::int64_t da = delta(first_slope, lambda);
        const std::int64_t db = delta(first_slope, mu);
        if (da < 2) emit("2.8.1(1)", -1, "delta(gamma_0, lambda) = " + std::to_string(da));
        if (db < 2) emit("2.8.1(3)", -1, "delta(gamma_0, mu) = " + std::to_string(db));
        const auto& d = std::get<PieceD>(piece);
        if (da >= 2 && d.winding_a >= 2 && d.winding_a != da)
          emit("winding-slope-mismatch", 0,
               "lower cap winding " + std::to_string(d.winding_a) +
                   " != delta(gamma_0, lambda) = " + std::to_string(da));
        if (db >= 2 && d.winding_b >= 2 && d.winding_b != db)
          emit("winding-slope-mismatch", 0,
               "upper cap winding " + std::to_string(d.winding_b) +
                   " != delta(gamma_0, mu) = " + std::to_string(db));
        break;
      }
      default:
        emit("single-piece-kind", -1, "a one-piece assembly must be of type D, E or F");
        break;
    }
  } else {
    // Bottom end chain: slope condition, then piece kind, then winding.
    const std::int64_t d0 = delta(first_slope, lambda);
    if (first_slope != lambda && d0 < 2) {
      emit("2.8.1(1)", -1, "delta(gamma_0, lambda) = " + std::to_string(d0));
    } else {
      const PieceType first_type = piece_type(a.pieces.front());
      const PieceType expected = (first_slope == lambda) ? PieceType::C : PieceType::B;
      if (first_type != expected) {
        emit("first-piece-kind", 0,
             std::string("first piece must be of type ") + piece_letter(expected) +
                 (expected == PieceType::C ? " (gamma_0 bounds lower disks)"
                                           : " (gamma_0 is essential below)"));
      } else if (expected == PieceType::B) {
        const auto& b = std::get<PieceB>(a.pieces.front());
        if (b.annulus_winding >= 2 && b.annulus_winding != d0)
          emit("winding-slope-mismatch", 0,
               "cap winding " + std::to_string(b.annulus_winding) +
                   " != delta(gamma_0, lambda) = " + std::to_string(d0));
      }
    }

    // Top end chain, symmetric against mu.
    const std::int64_t dn = delta(last_slope, mu);
    if (last_slope != mu && dn < 2) {
      emit("2.8.1(3)", -1, "delta(gamma_n, mu) = " + std::to_string(dn));
    } else {
      const PieceType last_type = piece_type(a.pieces.back());
      const PieceType expected = (last_slope == mu) ? PieceType::C : PieceType::B;
      if (last_type != expected) {
        emit("last-piece-kind", static_cast<int>(count) - 1,
             std::string("last piece must be of type ") + piece_letter(expected) +
                 (expected == PieceType::C ? " (gamma_n bounds upper disks)"
                                           : " (gamma_n is essential above)"));
      } else if (expected == PieceType::B) {
        const auto& b = std::get<PieceB>(a.pieces.back());
        if (b.annulus_winding >= 2 && b.annulus_winding != dn)
          emit("winding-slope-mismatch", static_cast<int>(count) - 1,
               "cap winding " + std::to_string(b.annulus_winding) +
                   " != delta(gamma_n, mu) = " + std::to_string(dn));
      }
    }

    for (std::size_t i = 1; i + 1 < count; ++i)
      if (piece_type(a.pieces[i]) != PieceType::A)
        emit("middle-piece-kind", static_cast<int>(i), "middle pieces must be of type A");

    for (std::size_t i = 0; i + 1 < a.gamma.size(); ++i) {
      const std::int64_t d = delta(a.gamma[i], a.gamma[i + 1]);
      if (d < 2)
        emit("2.8.1(2)", -1,
             "delta(gamma_" + std::to_string(i) + ", gamma_" + std::to_string(i + 1) +
                 ") = " + std::to_string(d));
    }
  }

  // Arc continuity: legs shake hands on the innermost disk D_1 at every
  // interface, so every piece's crossing arcs must use the two shared leg
  // slots 0 and 1.
  for (std::size_t i = 0; i < count; ++i)
    for (const CrossingEvent& c : piece_crossings(a.pieces[i]))
      if (c.arc_id != 0 && c.arc_id != 1) {
        emit("arc-continuity", static_cast<int>(i),
             "crossing arcs must use the shared leg ids 0 and 1");
        break;
      }

  return report;
}

namespace detail {

/// Sheet-level gluing graph shared by surface_invariants and knot_check.
/// Sheets are numbered piece-major: lower family 1..r first (type F: the r
/// spheres), then the upper family.
struct SheetGraph {
  std::vector<int> sheet_chi;          // per global sheet id
  std::vector<int> sheet_punctures;    // punctures attributed to each sheet
  std::vector<int> piece_base;         // first sheet id of each piece
  UnionFind components{0};

  int lower_sheet(int piece, int k) const { return piece_base[piece] + (k - 1); }
  int upper_sheet(int piece, int r, int j) const { return piece_base[piece] + r + (j - 1); }
};

inline SheetGraph build_sheet_graph(const Assembly& a) {
  const int r = a.r;
  SheetGraph g;

  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const Piece& piece = a.pieces[i];
    g.piece_base.push_back(static_cast<int>(g.sheet_chi.size()));
    const PieceType t = piece_type(piece);
    // Lower family.
    for (int k = 1; k <= r; ++k) {
      switch (t) {
        case PieceType::A:
        case PieceType::B:
        case PieceType::C:
          g.sheet_chi.push_back(-1);  // interface pants
          break;
        case PieceType::D:
        case PieceType::E:
          g.sheet_chi.push_back(0);  // cap annulus
          break;
        case PieceType::F:
          g.sheet_chi.push_back(2);  // closed vertical sphere
          break;
      }
    }
    // Upper family.
    const int upper = upper_family_size(piece, r);
    for (int j = 1; j <= upper; ++j) {
      switch (t) {
        case PieceType::A:
          g.sheet_chi.push_back(-1);  // interface pants
          break;
        case PieceType::B:
        case PieceType::D:
          g.sheet_chi.push_back(0);  // cap annulus
          break;
        case PieceType::C:
        case PieceType::E:
          g.sheet_chi.push_back(1);  // meridian disk
          break;
        case PieceType::F:
          break;
      }
    }
  }
  g.sheet_punctures.assign(g.sheet_chi.size(), 0);
  g.components = UnionFind(static_cast<int>(g.sheet_chi.size()));

  auto nested_owner = [r](int position) { return std::min(position, 2 * r + 1 - position); };

  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const Piece& piece = a.pieces[i];
    const PieceType t = piece_type(piece);
    const int pi = static_cast<int>(i);

    // Intra-piece mid-interface: lower foot at global position p meets the
    // upper curve landing there. Type F has no separate upper family.
    if (t != PieceType::F) {
      for (int p = 1; p <= 2 * r; ++p) {
        const int local = invert_mid_offset(a.mid_offsets[i], p, 2 * r);
        const int upper_owner =
            (t == PieceType::C || t == PieceType::E) ? local : nested_owner(local);
        g.components.unite(g.lower_sheet(pi, nested_owner(p)),
                           g.upper_sheet(pi, r, upper_owner));
      }
    }

    // Crossings puncture the sheet owning their position.
    for (const CrossingEvent& c : piece_crossings(piece)) {
      const int owner = (t == PieceType::F) ? c.position : nested_owner(c.position);
      ++g.sheet_punctures[g.lower_sheet(pi, owner)];
    }

    // Inter-piece interface: depth-matched nested circles. The first piece
    // faces the chain with its natural-bottom family; middles face up with
    // their natural-top (upper) family.
    if (i > 0) {
      for (int k = 1; k <= r; ++k) {
        const int outward = (i - 1 == 0) ? g.lower_sheet(0, k)
                                         : g.upper_sheet(static_cast<int>(i - 1), r, k);
        g.components.unite(outward, g.lower_sheet(pi, k));
      }
    }
  }
  return g;
}

}  // namespace detail

/// Compute the surface invariants of a valid assembly: per-component Euler
/// characteristic, boundary circle count and genus, plus totals. Throws
/// InvalidAssembly when validate_assembly(a) is not empty.
inline SurfaceReport surface_invariants(const Assembly& a) {
  using namespace detail;
  ValidationReport violations = validate_assembly(a);
  if (!violations.empty())
    throw InvalidAssembly("surface_invariants requires a valid assembly", std::move(violations));

  SheetGraph g = build_sheet_graph(a);

  // Aggregate per component, ordered by first sheet id.
  std::map<int, SurfaceComponent> by_root;
  std::vector<int> order;
  for (std::size_t s = 0; s < g.sheet_chi.size(); ++s) {
    const int root = g.components.find(static_cast<int>(s));
    if (by_root.find(root) == by_root.end()) order.push_back(root);
    SurfaceComponent& comp = by_root[root];
    comp.chi += g.sheet_chi[s] - g.sheet_punctures[s];
    comp.boundary_circles += g.sheet_punctures[s];
  }

  SurfaceReport report;
  for (int root : order) {
    SurfaceComponent comp = by_root[root];
    const int twice_genus = 2 - comp.chi - comp.boundary_circles;
    if (twice_genus < 0 || twice_genus % 2 != 0)
      throw MalformedAssembly("component with non-orientable characteristic");
    comp.genus = twice_genus / 2;
    report.total_boundary += comp.boundary_circles;
    report.components.push_back(comp);
  }
  report.connected = report.components.size() == 1;
  report.orientable = true;
  return report;
}

/// Independent Euler characteristic oracle: rebuild each sheet as an explicit
/// cell complex (pants 3 vertices/5 edges/1 face, annulus 2/3/1, disk 1/1/1,
/// sphere 1/1/2, one extra circle + spoke per puncture), identify boundary
/// circles cell-by-cell exactly as the assembly glues them, and return
/// V - E + F per component, sorted ascending. Throws BoundExceeded when the
/// instance needs more than `cell_budget` cells, InvalidAssembly on a
/// non-valid assembly.
inline std::vector<int> cell_complex_chi(const Assembly& a, std::size_t cell_budget = 500000) {
  using namespace detail;
  ValidationReport violations = validate_assembly(a);
  if (!violations.empty())
    throw InvalidAssembly("cell_complex_chi requires a valid assembly", std::move(violations));

  const int r = a.r;

  // Cell atoms. Vertices and edges live in union-finds so that circle
  // identifications can merge them; faces are never merged.
  UnionFind verts(0), edges(0);
  std::vector<std::pair<int, int>> edge_ends;          // edge -> endpoint vertices
  std::vector<std::vector<int>> face_edges;            // face -> boundary edges
  std::size_t cells = 0;

  auto bump = [&cells, cell_budget](std::size_t added) {
    cells += added;
    if (cells > cell_budget)
      throw BoundExceeded("cell complex exceeds the configured cell budget");
  };

  auto new_vertex = [&]() {
    bump(1);
    return verts.add();
  };
  auto new_edge = [&](int v1, int v2) {
    bump(1);
    const int e = edges.add();
    edge_ends.emplace_back(v1, v2);
    return e;
  };
  auto new_face = [&](std::vector<int> boundary) {
    bump(1);
    face_edges.push_back(std::move(boundary));
    return static_cast<int>(face_edges.size()) - 1;
  };

  // A boundary circle is one vertex plus one loop edge.
  struct Circle {
    int v = -1;
    int e = -1;
  };
  auto new_circle = [&]() {
    Circle c;
    c.v = new_vertex();
    c.e = new_edge(c.v, c.v);
    return c;
  };
  auto glue_circles = [&](const Circle& c1, const Circle& c2) {
    verts.unite(c1.v, c2.v);
    edges.unite(c1.e, c2.e);
  };

  // Sheet constructors return their boundary circles keyed by role.
  struct SheetCells {
    std::vector<Circle> feet;   // mid-interface feet, indexed by local position order
    Circle interface_circle;    // inter-piece circle (pants only)
    int face = -1;              // a face of the sheet, target for punctures
    int anchor = -1;            // a vertex of the sheet, spoke target for punctures
  };

  auto make_disk = [&]() {
    SheetCells s;
    Circle rim = new_circle();
    s.feet = {rim};
    s.face = new_face({rim.e});
    s.anchor = rim.v;
    return s;
  };
  auto make_annulus = [&]() {
    SheetCells s;
    Circle c1 = new_circle();
    Circle c2 = new_circle();
    int spoke = new_edge(c1.v, c2.v);
    s.feet = {c1, c2};
    s.face = new_face({c1.e, c2.e, spoke});
    s.anchor = c1.v;
    return s;
  };
  auto make_pants = [&]() {
    SheetCells s;
    Circle top = new_circle();
    Circle f1 = new_circle();
    Circle f2 = new_circle();
    int spoke1 = new_edge(top.v, f1.v);
    int spoke2 = new_edge(top.v, f2.v);
    s.interface_circle = top;
    s.feet = {f1, f2};
    s.face = new_face({top.e, f1.e, f2.e, spoke1, spoke2});
    s.anchor = top.v;
    return s;
  };
  auto make_sphere = [&]() {
    SheetCells s;
    Circle equator = new_circle();
    s.face = new_face({equator.e});
    new_face({equator.e});
    s.anchor = equator.v;
    return s;
  };
  auto puncture = [&](SheetCells& s) {
    Circle hole = new_circle();
    new_edge(s.anchor, hole.v);
    // The face keeps its atom; only the circle and spoke counts change,
    // which is exactly a chi drop of one.
  };

  auto nested_owner = [r](int position) { return std::min(position, 2 * r + 1 - position); };

  // Build all sheets. lower[i][k-1] / upper[i][j-1] mirror the sheet graph.
  std::vector<std::vector<SheetCells>> lower(a.pieces.size()), upper(a.pieces.size());
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const PieceType t = piece_type(a.pieces[i]);
    for (int k = 1; k <= r; ++k) {
      switch (t) {
        case PieceType::A:
        case PieceType::B:
        case PieceType::C:
          lower[i].push_back(make_pants());
          break;
        case PieceType::D:
        case PieceType::E:
          lower[i].push_back(make_annulus());
          break;
        case PieceType::F:
          lower[i].push_back(make_sphere());
          break;
      }
    }
    const int upper_sheets = upper_family_size(a.pieces[i], r);
    for (int j = 1; j <= upper_sheets; ++j) {
      switch (t) {
        case PieceType::A:
          upper[i].push_back(make_pants());
          break;
        case PieceType::B:
        case PieceType::D:
          upper[i].push_back(make_annulus());
          break;
        case PieceType::C:
        case PieceType::E:
          upper[i].push_back(make_disk());
          break;
        case PieceType::F:
          break;
      }
    }
  }

  // Identifications, mirroring build_sheet_graph: each sheet's feet are used
  // in the order of the positions it owns.
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const PieceType t = piece_type(a.pieces[i]);
    const bool disk_family = (t == PieceType::C || t == PieceType::E);

    if (t != PieceType::F) {
      for (int p = 1; p <= 2 * r; ++p) {
        const int local = invert_mid_offset(a.mid_offsets[i], p, 2 * r);
        SheetCells& low = lower[i][nested_owner(p) - 1];
        Circle low_foot = low.feet[p <= r ? 0 : 1];
        SheetCells& up =
            disk_family ? upper[i][local - 1] : upper[i][nested_owner(local) - 1];
        Circle up_foot = disk_family ? up.feet[0] : up.feet[local <= r ? 0 : 1];
        glue_circles(low_foot, up_foot);
      }
    }

    for (const CrossingEvent& c : piece_crossings(a.pieces[i])) {
      const int owner = (t == PieceType::F) ? c.position : nested_owner(c.position);
      puncture(lower[i][owner - 1]);
    }

    if (i > 0) {
      for (int k = 1; k <= r; ++k) {
        const Circle& outward =
            (i - 1 == 0) ? lower[i - 1][k - 1].interface_circle
                         : upper[i - 1][k - 1].interface_circle;
        glue_circles(outward, lower[i][k - 1].interface_circle);
      }
    }
  }

  // Component decomposition over all cell atoms: vertices, edges and faces
  // are nodes of an incidence graph.
  const int nv = static_cast<int>(verts.parent.size());
  const int ne = static_cast<int>(edges.parent.size());
  const int nf = static_cast<int>(face_edges.size());
  UnionFind atoms(nv + ne + nf);
  auto vnode = [&](int v) { return verts.find(v); };
  auto enode = [&](int e) { return nv + edges.find(e); };
  auto fnode = [&](int f) { return nv + ne + f; };
  for (int e = 0; e < ne; ++e) {
    atoms.unite(enode(e), vnode(edge_ends[e].first));
    atoms.unite(enode(e), vnode(edge_ends[e].second));
  }
  for (int f = 0; f < nf; ++f)
    for (int e : face_edges[f]) atoms.unite(fnode(f), enode(e));

  // chi per component = distinct vertex roots - distinct edge roots + faces.
  std::map<int, int> chi;
  std::set<int> seen_vertex_roots, seen_edge_roots;
  for (int v = 0; v < nv; ++v) {
    const int root = verts.find(v);
    if (seen_vertex_roots.insert(root).second) ++chi[atoms.find(vnode(v))];
  }
  for (int e = 0; e < ne; ++e) {
    const int root = edges.find(e);
    if (seen_edge_roots.insert(root).second) --chi[atoms.find(enode(e))];
  }
  for (int f = 0; f < nf; ++f) ++chi[atoms.find(fnode(f))];

  std::vector<int> result;
  for (const auto& [root, value] : chi) result.push_back(value);
  std::sort(result.begin(), result.end());
  return result;
}

/// Check that the knot data closes up: the crossing arcs use the two shared
/// leg slots (single closed curve), and the piece pattern yields exactly one
/// maximum and one minimum overall. Works on any structurally well-formed
/// assembly; a broken concatenation reports is_single_knot = false rather
/// than throwing.
inline KnotReport knot_check(const Assembly& a) {
  using namespace detail;
  check_assembly_structure(a);

  KnotReport report;
  report.is_single_knot = true;
  for (const Piece& piece : a.pieces)
    for (const CrossingEvent& c : piece_crossings(piece))
      if (c.arc_id != 0 && c.arc_id != 1) report.is_single_knot = false;

  // One extremum from each closing end (or two from a single closed piece),
  // none from middles: the pattern conditions are exactly the (1,1) shape.
  bool pattern_ok;
  if (a.pieces.size() == 1) {
    const PieceType t = piece_type(a.pieces.front());
    pattern_ok = (t == PieceType::D || t == PieceType::E || t == PieceType::F);
  } else {
    auto closing = [](const Piece& p) {
      return piece_type(p) == PieceType::B || piece_type(p) == PieceType::C;
    };
    pattern_ok = closing(a.pieces.front()) && closing(a.pieces.back());
    for (std::size_t i = 1; i + 1 < a.pieces.size(); ++i)
      if (piece_type(a.pieces[i]) != PieceType::A) pattern_ok = false;
  }
  report.is_one_one = report.is_single_knot && pattern_ok;
  return report;
}

}  // namespace meridian
