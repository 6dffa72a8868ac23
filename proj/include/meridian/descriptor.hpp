/**
 * \file descriptor.hpp
 * \brief Line-oriented text form of an Assembly: the descriptor format.
 *
 * A descriptor is a versioned, diff-friendly structured document. Blank
 * lines and full-line `#` comments are ignored; everything else is one of:
 *
 *     version 1
 *     manifold S3 | S1xS2 | L <p> <q>
 *     r <sheets>
 *     gamma <m>/<l> ...              one slope per piece, canonical form
 *     offsets <o>[:R] ...            one mid offset per piece, :R = reflected
 *     piece <index> <TYPE> <key> <values> ...
 *     crossing <piece> <rank> <arc> <position> in|out
 *
 * Piece keys by type (order fixed by the serializer, free on input):
 *     A  lower-cert p/q  upper-cert p/q  [wrap w]
 *     B  winding w  lower-cert p/q  min-cert p/q  [wrap w]
 *     C  lower-cert p/q  min-endpoints d1 d2
 *     D  winding-a w  winding-b w  max-cert p/q  min-cert p/q  [wrap w]
 *     E  winding-a w  max-cert p/q  min-endpoints d1 d2
 *     F  min-endpoint p:side p:side  max-endpoint p:side p:side
 *
 * Parsing is strict: the version header must come first, every section
 * appears exactly once, piece indices are dense from 0, unknown line heads
 * or piece keys are rejected, slopes must be canonical, and numbers must
 * parse exactly. parse_descriptor(serialize_descriptor(a)) == a.
 */
#pragma once

#include <cstdint>
#include <map>
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

namespace detail {

inline std::string slope_text(const Slope& s) {
  return std::to_string(s.m) + "/" + std::to_string(s.l);
}

inline std::string cert_text(const TwoBridgeFraction& f) {
  return std::to_string(f.p) + "/" + std::to_string(f.q);
}

inline std::string touch_text(const EndpointTouch& t) {
  return std::to_string(t.position) + ":" + to_string(t.side);
}

inline std::int64_t parse_int(const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    const std::int64_t value = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw ParseError(std::string("malformed ") + what + ": " + token);
  }
}

inline std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& token,
                                                            const char* what) {
  const std::size_t slash = token.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == token.size())
    throw ParseError(std::string("malformed ") + what + ": " + token);
  return {parse_int(token.substr(0, slash), what), parse_int(token.substr(slash + 1), what)};
}

inline Slope parse_slope_token(const std::string& token) {
  const auto [m, l] = parse_fraction(token, "slope");
  const Slope s{m, l};
  if (!is_canonical(s)) throw ParseError("slope is not in canonical form: " + token);
  return s;
}

inline TwoBridgeFraction parse_cert_token(const std::string& token) {
  const auto [p, q] = parse_fraction(token, "certificate");
  try {
    return make_two_bridge(p, q);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline Side parse_side_token(const std::string& token) {
  if (token == "in") return Side::inner;
  if (token == "out") return Side::outer;
  throw ParseError("malformed side (expected in|out): " + token);
}

inline EndpointTouch parse_touch_token(const std::string& token) {
  const std::size_t colon = token.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
    throw ParseError("malformed endpoint touch (expected pos:side): " + token);
  return {static_cast<int>(parse_int(token.substr(0, colon), "endpoint position")),
          parse_side_token(token.substr(colon + 1))};
}

/// Sequential reader over the tokens of one piece line.
class TokenCursor {
 public:
  TokenCursor(std::vector<std::string> tokens, std::string line)
      : tokens_(std::move(tokens)), line_(std::move(line)) {}

  bool done() const { return index_ >= tokens_.size(); }

  const std::string& next(const char* what) {
    if (done()) throw ParseError(std::string("missing ") + what + " in: " + line_);
    return tokens_[index_++];
  }

  const std::string& line() const { return line_; }

 private:
  std::vector<std::string> tokens_;
  std::size_t index_ = 0;
  std::string line_;
};

}  // namespace detail

/// Render an assembly in descriptor form. The output is deterministic:
/// fixed section order, pieces ascending, crossings in rank order.
inline std::string serialize_descriptor(const Assembly& a) {
  using namespace detail;
  std::ostringstream out;
  out << "version 1\n";
  switch (a.manifold.kind) {
    case ManifoldSpec::Kind::S3: out << "manifold S3\n"; break;
    case ManifoldSpec::Kind::S1xS2: out << "manifold S1xS2\n"; break;
    case ManifoldSpec::Kind::Lens:
      out << "manifold L " << a.manifold.p << ' ' << a.manifold.q << '\n';
      break;
  }
  out << "r " << a.r << '\n';
  out << "gamma";
  for (const Slope& s : a.gamma) out << ' ' << slope_text(s);
  out << '\n';
  out << "offsets";
  for (const MidOffset& o : a.mid_offsets) {
    out << ' ' << o.offset;
    if (o.reflect) out << ":R";
  }
  out << '\n';

  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    out << "piece " << i << ' ' << piece_letter(piece_type(a.pieces[i]));
    if (const auto* pa = std::get_if<PieceA>(&a.pieces[i])) {
      out << " lower-cert " << cert_text(pa->lower_cert) << " upper-cert "
          << cert_text(pa->upper_cert);
      if (pa->disjoint_wrap) out << " wrap " << *pa->disjoint_wrap;
    } else if (const auto* pb = std::get_if<PieceB>(&a.pieces[i])) {
      out << " winding " << pb->annulus_winding << " lower-cert " << cert_text(pb->lower_cert)
          << " min-cert " << cert_text(pb->min_cert);
      if (pb->disjoint_wrap) out << " wrap " << *pb->disjoint_wrap;
    } else if (const auto* pc = std::get_if<PieceC>(&a.pieces[i])) {
      out << " lower-cert " << cert_text(pc->lower_cert) << " min-endpoints "
          << pc->min_endpoint_disks.first << ' ' << pc->min_endpoint_disks.second;
    } else if (const auto* pd = std::get_if<PieceD>(&a.pieces[i])) {
      out << " winding-a " << pd->winding_a << " winding-b " << pd->winding_b << " max-cert "
          << cert_text(pd->max_cert) << " min-cert " << cert_text(pd->min_cert);
      if (pd->disjoint_wrap) out << " wrap " << *pd->disjoint_wrap;
    } else if (const auto* pe = std::get_if<PieceE>(&a.pieces[i])) {
      out << " winding-a " << pe->winding_a << " max-cert " << cert_text(pe->max_cert)
          << " min-endpoints " << pe->min_endpoint_disks.first << ' '
          << pe->min_endpoint_disks.second;
    } else {
      const PieceF& pf = std::get<PieceF>(a.pieces[i]);
      out << " min-endpoint " << touch_text(pf.min_endpoint.first) << ' '
          << touch_text(pf.min_endpoint.second) << " max-endpoint "
          << touch_text(pf.max_endpoint.first) << ' ' << touch_text(pf.max_endpoint.second);
    }
    out << '\n';
  }

  for (std::size_t i = 0; i < a.pieces.size(); ++i)
    for (const CrossingEvent& c : piece_crossings(a.pieces[i]))
      out << "crossing " << i << ' ' << c.height_rank << ' ' << c.arc_id << ' ' << c.position
          << ' ' << to_string(c.side) << '\n';
  return out.str();
}

/// Parse a descriptor. Throws ParseError on any deviation from the format;
/// the result is returned verbatim (global validity is validate_assembly's
/// business, not the parser's).
inline Assembly parse_descriptor(const std::string& text) {
  using namespace detail;

  std::istringstream in(text);
  std::string raw;
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> raw_lines;
  while (std::getline(in, raw)) {
    std::istringstream ls(raw);
    std::vector<std::string> tokens;
    std::string token;
    while (ls >> token) {
      if (!token.empty() && token[0] == '#') break;  // comment to end of line
      tokens.push_back(token);
    }
    if (tokens.empty()) continue;
    lines.push_back(std::move(tokens));
    raw_lines.push_back(raw);
  }
  if (lines.empty()) throw ParseError("empty descriptor");
  if (lines[0].size() != 2 || lines[0][0] != "version")
    throw ParseError("descriptor must start with a version header");
  if (lines[0][1] != "1") throw ParseError("unsupported descriptor version: " + lines[0][1]);

  std::optional<ManifoldSpec> manifold;
  std::optional<int> r;
  std::optional<std::vector<Slope>> gamma;
  std::optional<std::vector<MidOffset>> offsets;
  std::map<int, Piece> pieces;
  std::map<int, std::vector<CrossingEvent>> crossings;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    TokenCursor cur(lines[li], raw_lines[li]);
    const std::string head = cur.next("line head");

    if (head == "version") {
      throw ParseError("duplicate version header");
    } else if (head == "manifold") {
      if (manifold) throw ParseError("duplicate manifold line");
      const std::string kind = cur.next("manifold kind");
      if (kind == "S3") {
        manifold = ManifoldSpec::s3();
      } else if (kind == "S1xS2") {
        manifold = ManifoldSpec::s1xs2();
      } else if (kind == "L") {
        const std::int64_t p = parse_int(cur.next("lens p"), "lens p");
        const std::int64_t q = parse_int(cur.next("lens q"), "lens q");
        try {
          manifold = ManifoldSpec::lens(p, q);
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what());
        }
      } else {
        throw ParseError("unknown manifold kind: " + kind);
      }
    } else if (head == "r") {
      if (r) throw ParseError("duplicate r line");
      r = static_cast<int>(parse_int(cur.next("r value"), "r"));
    } else if (head == "gamma") {
      if (gamma) throw ParseError("duplicate gamma line");
      gamma.emplace();
      while (!cur.done()) gamma->push_back(parse_slope_token(cur.next("slope")));
      if (gamma->empty()) throw ParseError("gamma line needs at least one slope");
    } else if (head == "offsets") {
      if (offsets) throw ParseError("duplicate offsets line");
      offsets.emplace();
      while (!cur.done()) {
        std::string token = cur.next("offset");
        MidOffset o;
        if (token.size() > 2 && token.substr(token.size() - 2) == ":R") {
          o.reflect = true;
          token = token.substr(0, token.size() - 2);
        }
        o.offset = static_cast<int>(parse_int(token, "offset"));
        offsets->push_back(o);
      }
      if (offsets->empty()) throw ParseError("offsets line needs at least one entry");
    } else if (head == "piece") {
      const int index = static_cast<int>(parse_int(cur.next("piece index"), "piece index"));
      if (pieces.count(index)) throw ParseError("duplicate piece " + std::to_string(index));
      const std::string letter = cur.next("piece type");

      // Collect key -> value-token-list, every key at most once.
      auto take_key = [&cur](std::map<std::string, bool>& seen, const std::string& key) {
        if (seen[key]) throw ParseError("duplicate key " + key + " in: " + cur.line());
        seen[key] = true;
      };
      std::map<std::string, bool> seen;

      if (letter == "A") {
        PieceA p;
        std::optional<TwoBridgeFraction> lower, upper;
        while (!cur.done()) {
          const std::string key = cur.next("key");
          take_key(seen, key);
          if (key == "lower-cert")
            lower = parse_cert_token(cur.next("lower-cert value"));
          else if (key == "upper-cert")
            upper = parse_cert_token(cur.next("upper-cert value"));
          else if (key == "wrap")
            p.disjoint_wrap = parse_int(cur.next("wrap value"), "wrap");
          else
            throw ParseError("unknown type-A key: " + key);
        }
        if (!lower || !upper) throw ParseError("type A needs lower-cert and upper-cert");
        p.lower_cert = *lower;
        p.upper_cert = *upper;
        pieces.emplace(index, Piece{p});
      } else if (letter == "B") {
        PieceB p;
        std::optional<std::int64_t> winding;
        std::optional<TwoBridgeFraction> lower, min_cert;
        while (!cur.done()) {
          const std::string key = cur.next("key");
          take_key(seen, key);
          if (key == "winding")
            winding = parse_int(cur.next("winding value"), "winding");
          else if (key == "lower-cert")
            lower = parse_cert_token(cur.next("lower-cert value"));
          else if (key == "min-cert")
            min_cert = parse_cert_token(cur.next("min-cert value"));
          else if (key == "wrap")
            p.disjoint_wrap = parse_int(cur.next("wrap value"), "wrap");
          else
            throw ParseError("unknown type-B key: " + key);
        }
        if (!winding || !lower || !min_cert)
          throw ParseError("type B needs winding, lower-cert, and min-cert");
        p.annulus_winding = *winding;
        p.lower_cert = *lower;
        p.min_cert = *min_cert;
        pieces.emplace(index, Piece{p});
      } else if (letter == "C") {
        PieceC p;
        std::optional<TwoBridgeFraction> lower;
        bool endpoints = false;
        while (!cur.done()) {
          const std::string key = cur.next("key");
          take_key(seen, key);
          if (key == "lower-cert") {
            lower = parse_cert_token(cur.next("lower-cert value"));
          } else if (key == "min-endpoints") {
            p.min_endpoint_disks.first =
                static_cast<int>(parse_int(cur.next("disk"), "endpoint disk"));
            p.min_endpoint_disks.second =
                static_cast<int>(parse_int(cur.next("disk"), "endpoint disk"));
            endpoints = true;
          } else {
            throw ParseError("unknown type-C key: " + key);
          }
        }
        if (!lower || !endpoints) throw ParseError("type C needs lower-cert and min-endpoints");
        p.lower_cert = *lower;
        pieces.emplace(index, Piece{p});
      } else if (letter == "D") {
        PieceD p;
        std::optional<std::int64_t> wa, wb;
        std::optional<TwoBridgeFraction> max_cert, min_cert;
        while (!cur.done()) {
          const std::string key = cur.next("key");
          take_key(seen, key);
          if (key == "winding-a")
            wa = parse_int(cur.next("winding-a value"), "winding-a");
          else if (key == "winding-b")
            wb = parse_int(cur.next("winding-b value"), "winding-b");
          else if (key == "max-cert")
            max_cert = parse_cert_token(cur.next("max-cert value"));
          else if (key == "min-cert")
            min_cert = parse_cert_token(cur.next("min-cert value"));
          else if (key == "wrap")
            p.disjoint_wrap = parse_int(cur.next("wrap value"), "wrap");
          else
            throw ParseError("unknown type-D key: " + key);
        }
        if (!wa || !wb || !max_cert || !min_cert)
          throw ParseError("type D needs winding-a, winding-b, max-cert, and min-cert");
        p.winding_a = *wa;
        p.winding_b = *wb;
        p.max_cert = *max_cert;
        p.min_cert = *min_cert;
        pieces.emplace(index, Piece{p});
      } else if (letter == "E") {
        PieceE p;
        std::optional<std::int64_t> wa;
        std::optional<TwoBridgeFraction> max_cert;
        bool endpoints = false;
        while (!cur.done()) {
          const std::string key = cur.next("key");
          take_key(seen, key);
          if (key == "winding-a") {
            wa = parse_int(cur.next("winding-a value"), "winding-a");
          } else if (key == "max-cert") {
            max_cert = parse_cert_token(cur.next("max-cert value"));
          } else if (key == "min-endpoints") {
            p.min_endpoint_disks.first =
                static_cast<int>(parse_int(cur.next("disk"), "endpoint disk"));
            p.min_endpoint_disks.second =
                static_cast<int>(parse_int(cur.next("disk"), "endpoint disk"));
            endpoints = true;
          } else {
            throw ParseError("unknown type-E key: " + key);
          }
        }
        if (!wa || !max_cert || !endpoints)
          throw ParseError("type E needs winding-a, max-cert, and min-endpoints");
        p.winding_a = *wa;
        p.max_cert = *max_cert;
        pieces.emplace(index, Piece{p});
      } else if (letter == "F") {
        PieceF p;
        bool min_seen = false, max_seen = false;
        while (!cur.done()) {
          const std::string key = cur.next("key");
          take_key(seen, key);
          if (key == "min-endpoint") {
            p.min_endpoint.first = parse_touch_token(cur.next("touch"));
            p.min_endpoint.second = parse_touch_token(cur.next("touch"));
            min_seen = true;
          } else if (key == "max-endpoint") {
            p.max_endpoint.first = parse_touch_token(cur.next("touch"));
            p.max_endpoint.second = parse_touch_token(cur.next("touch"));
            max_seen = true;
          } else {
            throw ParseError("unknown type-F key: " + key);
          }
        }
        if (!min_seen || !max_seen)
          throw ParseError("type F needs min-endpoint and max-endpoint");
        pieces.emplace(index, Piece{p});
      } else {
        throw ParseError("unknown piece type: " + letter);
      }
    } else if (head == "crossing") {
      const int piece = static_cast<int>(parse_int(cur.next("piece index"), "piece index"));
      CrossingEvent c;
      c.height_rank = static_cast<int>(parse_int(cur.next("rank"), "rank"));
      c.arc_id = static_cast<int>(parse_int(cur.next("arc"), "arc"));
      c.position = static_cast<int>(parse_int(cur.next("position"), "position"));
      c.side = parse_side_token(cur.next("side"));
      if (!cur.done()) throw ParseError("trailing tokens in: " + cur.line());
      crossings[piece].push_back(c);
    } else {
      throw ParseError("unknown line head: " + head);
    }
  }

  if (!manifold) throw ParseError("missing manifold line");
  if (!r) throw ParseError("missing r line");
  if (!gamma) throw ParseError("missing gamma line");
  if (!offsets) throw ParseError("missing offsets line");
  if (pieces.empty()) throw ParseError("descriptor declares no pieces");

  Assembly a;
  a.manifold = *manifold;
  a.r = *r;
  a.gamma = std::move(*gamma);
  a.mid_offsets = std::move(*offsets);
  for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
    auto it = pieces.find(i);
    if (it == pieces.end())
      throw ParseError("piece indices must be dense from 0; missing piece " +
                       std::to_string(i));
    a.pieces.push_back(std::move(it->second));
  }
  // Pieces share the assembly-wide sheet count; the per-piece field is not
  // serialized separately.
  for (Piece& p : a.pieces)
    std::visit([&](auto& q) { q.r = a.r; }, p);
  for (auto& [index, events] : crossings) {
    if (index < 0 || index >= static_cast<int>(a.pieces.size()))
      throw ParseError("crossing references unknown piece " + std::to_string(index));
    // Set the crossing list in file order; rank coherence is checked by
    // piece validation, not the parser.
    piece_crossings(a.pieces[static_cast<std::size_t>(index)]) = std::move(events);
  }
  return a;
}

}  // namespace meridian
