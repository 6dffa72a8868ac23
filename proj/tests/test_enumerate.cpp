// Unit tests for the search layer: slope-sequence enumeration, bounded
// witness search, and the genus-1 classification.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "meridian/enumerate.hpp"
#include "meridian/morse.hpp"

using namespace meridian;

namespace {

CrossingEvent ev(int rank, int arc, int position, Side side = Side::inner) {
  return CrossingEvent{rank, arc, position, side};
}

TwoBridgeFraction cert() { return make_two_bridge(3, 1); }

PieceA disjoint_a(int r) {
  PieceA a;
  a.r = r;
  a.lower_cert = cert();
  a.upper_cert = cert();
  a.disjoint_wrap = 2;
  return a;
}

PieceB disjoint_b(int r, std::int64_t winding) {
  PieceB b;
  b.r = r;
  b.annulus_winding = winding;
  b.lower_cert = cert();
  b.min_cert = cert();
  b.disjoint_wrap = 2;
  return b;
}

PieceC crossing_c(int r, int p = 1, int q = 2) {
  PieceC c;
  c.r = r;
  c.lower_cert = cert();
  c.crossings = {ev(1, 0, p), ev(2, 1, q)};
  c.min_endpoint_disks = {p, q};
  return c;
}

PieceD crossing_d(int r, std::int64_t wa, std::int64_t wb) {
  PieceD d;
  d.r = r;
  d.winding_a = wa;
  d.winding_b = wb;
  d.max_cert = cert();
  d.min_cert = cert();
  d.crossings = {ev(1, 0, 1), ev(2, 1, 2)};
  return d;
}

Assembly make(ManifoldSpec m, std::vector<Slope> gamma, std::vector<Piece> pieces, int r) {
  Assembly a;
  a.manifold = m;
  a.gamma = std::move(gamma);
  a.pieces = std::move(pieces);
  a.mid_offsets.assign(a.pieces.size(), MidOffset{});
  a.r = r;
  return a;
}

std::vector<PieceType> types_of(const Assembly& a) {
  std::vector<PieceType> out;
  for (const Piece& p : a.pieces) out.push_back(piece_type(p));
  return out;
}

bool sequence_obeys_conditions(const ManifoldSpec& m, const std::vector<Slope>& gamma) {
  if (!(gamma.front() == m.lambda() || delta(gamma.front(), m.lambda()) >= 2)) return false;
  if (!(gamma.back() == m.mu() || delta(gamma.back(), m.mu()) >= 2)) return false;
  for (std::size_t i = 0; i + 1 < gamma.size(); ++i)
    if (delta(gamma[i], gamma[i + 1]) < 2) return false;
  return true;
}

bool has_component(const SurfaceReport& report, int genus, int boundary) {
  for (const SurfaceComponent& c : report.components)
    if (c.genus == genus && c.boundary_circles == boundary) return true;
  return false;
}

}  // namespace

TEST_CASE("slope sequences obey the chain conditions", "[enumerate]") {
  SECTION("pinned n = 1 content over S3") {
    std::vector<std::vector<Slope>> seqs = slope_sequences(ManifoldSpec::s3(), 1, 2);
    const std::vector<Slope> wanted{Slope{1, 2}, Slope{2, 1}};
    const std::vector<Slope> excluded{Slope{1, 1}, Slope{1, 2}};
    CHECK(std::find(seqs.begin(), seqs.end(), wanted) != seqs.end());
    CHECK(std::find(seqs.begin(), seqs.end(), excluded) == seqs.end());
  }

  SECTION("gamma_0 = lambda is admitted by the disjunctive bottom condition") {
    std::vector<std::vector<Slope>> seqs = slope_sequences(ManifoldSpec::s1xs2(), 1, 2);
    bool lambda_start = false;
    for (const std::vector<Slope>& g : seqs)
      lambda_start = lambda_start || g.front() == ManifoldSpec::s1xs2().lambda();
    CHECK(lambda_start);
  }

  SECTION("re-filtering is the identity and entries are canonical, bounded, unique") {
    for (const ManifoldSpec& m :
         {ManifoldSpec::s3(), ManifoldSpec::s1xs2(), ManifoldSpec::lens(5, 2)}) {
      for (int n : {0, 1, 2}) {
        std::vector<std::vector<Slope>> seqs = slope_sequences(m, n, 3);
        CHECK_FALSE(seqs.empty());
        std::set<std::vector<std::pair<std::int64_t, std::int64_t>>> seen;
        for (const std::vector<Slope>& g : seqs) {
          CHECK(g.size() == static_cast<std::size_t>(n) + 1);
          CHECK(sequence_obeys_conditions(m, g));
          std::vector<std::pair<std::int64_t, std::int64_t>> key;
          for (const Slope& s : g) {
            CHECK(is_canonical(s));
            CHECK(std::max(s.m < 0 ? -s.m : s.m, s.l) <= 3);
            key.emplace_back(s.m, s.l);
          }
          CHECK(seen.insert(key).second);  // deduplicated
        }
      }
    }
  }

  SECTION("invalid arguments are rejected") {
    CHECK_THROWS_AS(slope_sequences(ManifoldSpec::s3(), -1, 2), std::invalid_argument);
    CHECK_THROWS_AS(slope_sequences(ManifoldSpec::s3(), 1, 0), std::invalid_argument);
  }
}

TEST_CASE("pinned search outcomes", "[enumerate]") {
  SECTION("S3 genus 1 with two boundary circles is a [D] or [B, C]") {
    SearchOutcome out = find_construction({ManifoldSpec::s3(), 1, 2, 2, 3, 5, 4});
    REQUIRE(out.found());
    const std::vector<PieceType> shape = types_of(*out.assembly);
    const bool is_d = shape == std::vector<PieceType>{PieceType::D};
    const bool is_bc = shape == std::vector<PieceType>{PieceType::B, PieceType::C};
    CHECK((is_d || is_bc));
    CHECK(validate_assembly(*out.assembly).empty());
    CHECK(has_component(surface_invariants(*out.assembly), 1, 2));
  }

  SECTION("S3 genus 0 is structurally impossible, not merely exhausted") {
    SearchOutcome out = find_construction({ManifoldSpec::s3(), 0, 2, 2, 3, 5, 4});
    CHECK_FALSE(out.found());
    CHECK(out.structurally_impossible);
    CHECK_FALSE(out.reason.empty());
  }

  SECTION("lens spaces realize genus 0 through a single type-E piece") {
    SearchOutcome out = find_construction({ManifoldSpec::lens(5, 2), 0, 2, 2, 1, 5, 4});
    REQUIRE(out.found());
    CHECK(types_of(*out.assembly) == std::vector<PieceType>{PieceType::E});
    CHECK(has_component(surface_invariants(*out.assembly), 0, 2));
  }

  SECTION("S1xS2 realizes an odd boundary count through a type-F piece") {
    SearchOutcome out = find_construction({ManifoldSpec::s1xs2(), 0, 1, 1, 1, 5, 3});
    REQUIRE(out.found());
    CHECK(types_of(*out.assembly) == std::vector<PieceType>{PieceType::F});
    CHECK(surface_invariants(*out.assembly).total_boundary == 1);
  }

  SECTION("odd boundary targets over S3 exhaust instead of faking a witness") {
    SearchOutcome out = find_construction({ManifoldSpec::s3(), 1, 1, 2, 3, 3, 4});
    CHECK_FALSE(out.found());
    CHECK_FALSE(out.structurally_impossible);
    CHECK(out.reason.find("exhausted") != std::string::npos);
  }

  SECTION("the search is deterministic") {
    const SearchSpec spec{ManifoldSpec::s3(), 2, 2, 3, 4, 5, 6};
    SearchOutcome first = find_construction(spec);
    SearchOutcome second = find_construction(spec);
    REQUIRE(first.found());
    REQUIRE(second.found());
    CHECK(first.assembly->gamma == second.assembly->gamma);
    CHECK(types_of(*first.assembly) == types_of(*second.assembly));
    CHECK(serialize_trace(trace(*first.assembly)) == serialize_trace(trace(*second.assembly)));
  }

  SECTION("invalid search specs are rejected") {
    CHECK_THROWS_AS(find_construction({ManifoldSpec::s3(), -1, 0, 2, 2, 2, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(find_construction({ManifoldSpec::s3(), 1, 0, 0, 2, 2, 2}),
                    std::invalid_argument);
  }
}

TEST_CASE("existence sweep with full post-conditions", "[enumerate]") {
  for (const ManifoldSpec& m :
       {ManifoldSpec::s3(), ManifoldSpec::s1xs2(), ManifoldSpec::lens(5, 2)}) {
    for (int genus : {1, 2, 3}) {
      for (int boundary : {0, 2, 4}) {
        INFO(m.name() << " genus " << genus << " boundary " << boundary);
        SearchOutcome out = find_construction({m, genus, boundary, 3, 5, 5, 6});
        REQUIRE(out.found());
        const Assembly& a = *out.assembly;
        CHECK(validate_assembly(a).empty());

        const KnotReport knot = knot_check(a);
        CHECK(knot.is_single_knot);
        CHECK(knot.is_one_one);
        CHECK(has_component(surface_invariants(a), genus, boundary));

        // Morse round trip: the trace replays and recognition recovers the
        // piece types (and r, whenever the trace determines it).
        const MorseTrace t = trace(a);
        CHECK(replay(t).accepted());
        const AssemblySkeleton skeleton = recognize(t, assembly_endpoints(a));
        CHECK(skeleton.types == types_of(a));
        if (a.pieces.size() > 1) CHECK(skeleton.r == a.r);
      }
    }
  }
}

TEST_CASE("genus-1 classification", "[enumerate]") {
  SECTION("pinned instances of all three classes") {
    Assembly d = make(ManifoldSpec::s3(), {Slope{3, 2}}, {Piece{crossing_d(1, 2, 3)}}, 1);
    CHECK(classify_genus1(d) == Genus1Class::d);

    Assembly bc = make(ManifoldSpec::s3(), {Slope{3, 2}, Slope{0, 1}},
                       {Piece{disjoint_b(1, 2)}, Piece{crossing_c(1)}}, 1);
    CHECK(classify_genus1(bc) == Genus1Class::b_plus_c);

    Assembly acc = make(ManifoldSpec::s3(), {Slope{1, 0}, Slope{3, 2}, Slope{0, 1}},
                        {Piece{crossing_c(1)}, Piece{disjoint_a(1)}, Piece{crossing_c(1)}}, 1);
    CHECK(classify_genus1(acc) == Genus1Class::a_plus_c_plus_c);
  }

  SECTION("higher genus is not-genus-1") {
    Assembly bb = make(ManifoldSpec::s3(), {Slope{1, 2}, Slope{2, 1}},
                       {Piece{disjoint_b(1, 2)}, Piece{disjoint_b(1, 2)}}, 1);
    REQUIRE(surface_invariants(bb).components[0].genus == 2);
    CHECK(classify_genus1(bb) == Genus1Class::not_genus_1);
  }

  SECTION("validation failures propagate") {
    Assembly bad = make(ManifoldSpec::s3(), {Slope{1, 1}, Slope{1, 2}},
                        {Piece{disjoint_b(1, 2)}, Piece{disjoint_b(1, 2)}}, 1);
    CHECK_THROWS_AS(classify_genus1(bad), InvalidAssembly);
  }

  SECTION("class names") {
    CHECK(to_string(Genus1Class::a_plus_c_plus_c) == "A+C+C");
    CHECK(to_string(Genus1Class::b_plus_c) == "B+C");
    CHECK(to_string(Genus1Class::d) == "D");
    CHECK(to_string(Genus1Class::not_genus_1) == "not-genus-1");
  }
}

TEST_CASE("canonical family: every candidate is sound, genus-1 always classifies",
          "[enumerate]") {
  for (const ManifoldSpec& m :
       {ManifoldSpec::s3(), ManifoldSpec::s1xs2(), ManifoldSpec::lens(5, 2)}) {
    int candidates = 0;
    int genus1 = 0;
    for_each_canonical_assembly(m, 2, 3, 3, 4, [&](const Assembly& a) {
      ++candidates;
      CHECK(validate_assembly(a).empty());
      const SurfaceReport report = surface_invariants(a);
      CHECK(replay(trace(a)).accepted());
      if (report.connected && report.components[0].genus == 1) {
        ++genus1;
        const Genus1Class c = classify_genus1(a);
        CHECK((c == Genus1Class::d || c == Genus1Class::b_plus_c ||
               c == Genus1Class::a_plus_c_plus_c));
      }
      // Parity: only type-F assemblies may produce odd boundary totals.
      if (piece_type(a.pieces.front()) != PieceType::F)
        CHECK(report.total_boundary % 2 == 0);
      return false;  // never stop: walk the whole family
    });
    INFO(m.name());
    CHECK(candidates > 0);
    CHECK(genus1 > 0);
  }
}

TEST_CASE("the first canonical witness is the disjoint single D", "[enumerate]") {
  std::optional<Assembly> first;
  for_each_canonical_assembly(ManifoldSpec::s3(), 2, 2, 5, 2, [&](const Assembly& a) {
    first = a;
    return true;
  });
  REQUIRE(first.has_value());
  CHECK(types_of(*first) == std::vector<PieceType>{PieceType::D});
  CHECK(first->gamma == std::vector<Slope>{Slope{3, 2}});
  CHECK(first->r == 1);
  CHECK(piece_crossings(first->pieces.front()).empty());
  const PieceD& d = std::get<PieceD>(first->pieces.front());
  CHECK(d.winding_a == 2);
  CHECK(d.winding_b == 3);
}
