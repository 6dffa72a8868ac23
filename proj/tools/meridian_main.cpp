// Command-line front end: descriptor validation and measurement, trace
// generation and recognition, and bounded witness search.
//
// Exit codes: 0 clean, 1 domain violation (failed conditions, rejected
// traces, fruitless searches), 2 I/O, usage, or parse errors. All reports
// are deterministic: identical inputs give byte-identical output.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "meridian/descriptor.hpp"
#include "meridian/enumerate.hpp"
#include "meridian/morse.hpp"

namespace {

using namespace meridian;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Parse a manifold flag value: S3, S1xS2, or L(p,q).
std::optional<ManifoldSpec> parse_manifold_flag(const std::string& text) {
  if (text == "S3") return ManifoldSpec::s3();
  if (text == "S1xS2") return ManifoldSpec::s1xs2();
  if (text.size() >= 6 && text.rfind("L(", 0) == 0 && text.back() == ')') {
    const std::string inner = text.substr(2, text.size() - 3);
    const std::size_t comma = inner.find(',');
    if (comma == std::string::npos) return std::nullopt;
    try {
      std::size_t used_p = 0, used_q = 0;
      const std::string p_text = inner.substr(0, comma);
      const std::string q_text = inner.substr(comma + 1);
      const long long p = std::stoll(p_text, &used_p);
      const long long q = std::stoll(q_text, &used_q);
      if (used_p != p_text.size() || used_q != q_text.size()) return std::nullopt;
      return ManifoldSpec::lens(p, q);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// Load and parse a descriptor file; on failure prints to stderr and
/// returns nullopt with *exit_code set.
std::optional<Assembly> load_descriptor(const std::string& path, int* exit_code) {
  const std::optional<std::string> text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    *exit_code = 2;
    return std::nullopt;
  }
  try {
    return parse_descriptor(*text);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    *exit_code = 2;
    return std::nullopt;
  }
}

void print_violations(std::ostream& out, const ValidationReport& report) {
  for (const ValidationIssue& issue : report) {
    out << "violation " << issue.code;
    if (issue.piece >= 0) out << " piece " << issue.piece;
    out << ": " << issue.detail << "\n";
  }
}

int cmd_validate(const std::string& path) {
  int code = 0;
  const std::optional<Assembly> a = load_descriptor(path, &code);
  if (!a) return code;
  ValidationReport report;
  try {
    report = validate_assembly(*a);
  } catch (const std::invalid_argument& e) {
    std::cerr << "malformed descriptor: " << e.what() << "\n";
    return 2;
  }
  if (!report.empty()) {
    print_violations(std::cout, report);
    return 1;
  }
  const SurfaceReport surface = surface_invariants(*a);
  if (surface.connected)
    std::cout << "valid; genus " << surface.components[0].genus << ", boundary "
              << surface.total_boundary << "\n";
  else
    std::cout << "valid; components " << surface.components.size() << ", boundary "
              << surface.total_boundary << "\n";
  return 0;
}

int cmd_invariants(const std::string& path) {
  int code = 0;
  const std::optional<Assembly> a = load_descriptor(path, &code);
  if (!a) return code;
  SurfaceReport surface;
  try {
    surface = surface_invariants(*a);
  } catch (const InvalidAssembly& e) {
    print_violations(std::cerr, e.report);
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "malformed descriptor: " << e.what() << "\n";
    return 2;
  }
  if (surface.components.size() == 1) {
    std::cout << "components: 1, genus " << surface.components[0].genus << ", boundary "
              << surface.components[0].boundary_circles << "\n";
  } else {
    std::cout << "components: " << surface.components.size() << "\n";
    for (std::size_t i = 0; i < surface.components.size(); ++i)
      std::cout << "component " << i + 1 << ": genus " << surface.components[i].genus
                << ", boundary " << surface.components[i].boundary_circles << "\n";
  }
  return 0;
}

int cmd_trace(const std::string& path) {
  int code = 0;
  const std::optional<Assembly> a = load_descriptor(path, &code);
  if (!a) return code;
  try {
    std::cout << serialize_trace(trace(*a));
  } catch (const InvalidAssembly& e) {
    print_violations(std::cerr, e.report);
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "malformed descriptor: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

std::optional<EndpointKind> parse_endpoint_flag(const std::string& text) {
  if (text == "annuli") return EndpointKind::annuli;
  if (text == "disks" || text == "meridian-disks") return EndpointKind::meridian_disks;
  return std::nullopt;
}

int cmd_recognize(const std::string& path, const std::string& bottom, const std::string& top) {
  const std::optional<EndpointKind> bottom_kind = parse_endpoint_flag(bottom);
  const std::optional<EndpointKind> top_kind = parse_endpoint_flag(top);
  if (!bottom_kind || !top_kind) {
    std::cerr << "error: endpoints must be annuli or disks\n";
    return 2;
  }
  const std::optional<std::string> text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return 2;
  }
  MorseTrace t;
  try {
    t = parse_trace(*text);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  AssemblySkeleton skeleton;
  try {
    skeleton = recognize(t, TraceEndpoints{*bottom_kind, *top_kind});
  } catch (const ParseError& e) {
    std::cerr << "not recognized: " << e.what() << "\n";
    return 1;
  }
  std::cout << "types:";
  for (PieceType type : skeleton.types) std::cout << ' ' << piece_letter(type);
  std::cout << "\nr: " << skeleton.r << "\n";
  for (std::size_t i = 0; i < skeleton.crossing_positions.size(); ++i) {
    std::cout << "crossings " << i << ":";
    for (int p : skeleton.crossing_positions[i]) std::cout << ' ' << p;
    std::cout << "\n";
  }
  return 0;
}

int cmd_search(const std::string& manifold_text, int genus, int boundary, int max_r,
               int max_pieces, std::int64_t max_coeff, int max_crossings) {
  const std::optional<ManifoldSpec> manifold = parse_manifold_flag(manifold_text);
  if (!manifold) {
    std::cerr << "error: manifold must be S3, S1xS2, or L(p,q)\n";
    return 2;
  }
  SearchOutcome outcome;
  try {
    outcome = find_construction(
        {*manifold, genus, boundary, max_r, max_pieces, max_coeff, max_crossings});
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (outcome.found()) {
    std::cout << serialize_descriptor(*outcome.assembly);
    return 0;
  }
  if (outcome.structurally_impossible)
    std::cout << outcome.reason << "\n";
  else
    std::cout << "not found: " << outcome.reason << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meridian: assemble, validate, measure, trace, and search the "
               "piece-based (1,1)-knot constructions"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string descriptor_path;
  CLI::App* validate = app.add_subcommand("validate", "check every condition of a descriptor");
  validate->add_option("descriptor", descriptor_path, "descriptor file")->required();
  validate->callback([&] { exit_code = cmd_validate(descriptor_path); });

  std::string invariants_path;
  CLI::App* invariants =
      app.add_subcommand("invariants", "report per-component genus and boundary counts");
  invariants->add_option("descriptor", invariants_path, "descriptor file")->required();
  invariants->callback([&] { exit_code = cmd_invariants(invariants_path); });

  std::string trace_path;
  CLI::App* trace_cmd =
      app.add_subcommand("trace", "emit the level-event trace of a valid descriptor");
  trace_cmd->add_option("descriptor", trace_path, "descriptor file")->required();
  trace_cmd->callback([&] { exit_code = cmd_trace(trace_path); });

  std::string recognize_path, bottom = "annuli", top = "annuli";
  CLI::App* recognize_cmd =
      app.add_subcommand("recognize", "parse a trace back into a piece skeleton");
  recognize_cmd->add_option("trace", recognize_path, "trace file")->required();
  recognize_cmd->add_option("--bottom", bottom, "bottom closing family: annuli|disks");
  recognize_cmd->add_option("--top", top, "top closing family: annuli|disks");
  recognize_cmd->callback([&] { exit_code = cmd_recognize(recognize_path, bottom, top); });

  std::string manifold_text;
  int genus = 1, boundary = 0, max_r = 3, max_pieces = 5, max_crossings = 6;
  std::int64_t max_coeff = 5;
  CLI::App* search = app.add_subcommand(
      "search", "find an assembly realizing a target genus and boundary count");
  search->add_option("--manifold", manifold_text, "S3, S1xS2, or L(p,q)")->required();
  search->add_option("--genus", genus, "target genus")->required();
  search->add_option("--boundary", boundary, "target boundary circle count")->required();
  search->add_option("--max-r", max_r, "sheet count bound (default 3)");
  search->add_option("--max-pieces", max_pieces, "piece count bound (default 5)");
  search->add_option("--max-coeff", max_coeff, "slope coefficient bound (default 5)");
  search->add_option("--max-crossings", max_crossings, "crossing count bound (default 6)");
  search->callback([&] {
    exit_code = cmd_search(manifold_text, genus, boundary, max_r, max_pieces, max_coeff,
                           max_crossings);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}
