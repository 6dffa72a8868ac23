// End-to-end tests of the command-line tool: exit codes, report shapes,
// byte-determinism, and the single-violation fixture corpus.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#ifndef MERIDIAN_CLI_PATH
#error "MERIDIAN_CLI_PATH must point at the built binary"
#endif
#ifndef MERIDIAN_FIXTURE_DIR
#error "MERIDIAN_FIXTURE_DIR must point at tests/descriptors"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

/// Run the CLI with the given arguments; captures stdout only unless
/// merge_stderr is set.
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string command = std::string(MERIDIAN_CLI_PATH) + " " + args +
                              (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture(const std::string& name) {
  return (std::filesystem::path(MERIDIAN_FIXTURE_DIR) / name).string();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("meridian-cli-test-" + name);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

/// cond-2.3.1-4.desc -> "2.3.1(4)"
std::string expected_code(const std::string& filename) {
  std::string body = filename.substr(5, filename.size() - 5 - 5);  // strip cond- and .desc
  const std::size_t dash = body.rfind('-');
  return body.substr(0, dash) + "(" + body.substr(dash + 1) + ")";
}

}  // namespace

TEST_CASE("each single-violation fixture reports exactly its condition", "[cli][fixtures]") {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(MERIDIAN_FIXTURE_DIR)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("cond-", 0) == 0) names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  REQUIRE(names.size() == 20);

  for (const std::string& name : names) {
    INFO(name);
    const RunResult r = run_cli("validate " + fixture(name));
    CHECK(r.exit_code == 1);
    const std::vector<std::string> lines = split_lines(r.output);
    REQUIRE(lines.size() == 1);
    const std::string want = "violation " + expected_code(name);
    // The identifier must be followed by a delimiter, so 2.2.1(1) does not
    // also match a hypothetical 2.2.1(10).
    const bool exact = lines[0].rfind(want + ":", 0) == 0 || lines[0].rfind(want + " ", 0) == 0;
    CHECK(exact);
  }
}

TEST_CASE("validate reports invariants of clean descriptors", "[cli]") {
  struct Expectation {
    const char* file;
    const char* line;
  };
  const std::vector<Expectation> table{
      {"good-single-d.desc", "valid; genus 1, boundary 2"},
      {"good-chain-bc.desc", "valid; genus 1, boundary 4"},
      {"good-e-lens.desc", "valid; genus 0, boundary 2"},
      {"good-f-odd.desc", "valid; genus 0, boundary 1"},
  };
  for (const Expectation& e : table) {
    INFO(e.file);
    const RunResult r = run_cli("validate " + fixture(e.file));
    CHECK(r.exit_code == 0);
    CHECK(r.output == std::string(e.line) + "\n");
  }
}

TEST_CASE("invariants prints the per-component report", "[cli]") {
  const RunResult r = run_cli("invariants " + fixture("good-single-d.desc"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == "components: 1, genus 1, boundary 2\n");

  const RunResult e = run_cli("invariants " + fixture("good-e-lens.desc"));
  CHECK(e.exit_code == 0);
  CHECK(e.output == "components: 1, genus 0, boundary 2\n");

  // An invalid descriptor is refused with exit 1 and no stdout report.
  const RunResult bad = run_cli("invariants " + fixture("cond-2.5.1-1.desc"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.empty());
}

TEST_CASE("parse failures exit 2 and keep stdout clean", "[cli]") {
  for (const char* name : {"bad-version.desc", "bad-unknown-field.desc"}) {
    INFO(name);
    const RunResult quiet = run_cli("validate " + fixture(name));
    CHECK(quiet.exit_code == 2);
    CHECK(quiet.output.empty());
    const RunResult merged = run_cli("validate " + fixture(name), /*merge_stderr=*/true);
    CHECK(merged.output.find("parse error:") != std::string::npos);
  }
  const RunResult missing = run_cli("validate /nonexistent.desc", /*merge_stderr=*/true);
  CHECK(missing.exit_code == 2);
  CHECK(missing.output.find("cannot read") != std::string::npos);
}

TEST_CASE("trace then recognize reproduces the skeleton", "[cli]") {
  const RunResult traced = run_cli("trace " + fixture("good-chain-bc.desc"));
  REQUIRE(traced.exit_code == 0);
  const auto trace_path = temp_file("bc.trace");
  write_file(trace_path, traced.output);

  const RunResult rec =
      run_cli("recognize " + trace_path.string() + " --bottom annuli --top disks");
  CHECK(rec.exit_code == 0);
  CHECK(rec.output == "types: B C\nr: 1\ncrossings 0: 1 2\ncrossings 1: 1 2\n");
  std::filesystem::remove(trace_path);
}

TEST_CASE("recognize rejects traces that replay cleanly but parse badly", "[cli]") {
  const auto path = temp_file("bad.trace");
  write_file(path, "initial 2 0 3/2\n1 S1\n2 S2\nfinal 2 0 3/2\n");
  const RunResult r =
      run_cli("recognize " + path.string() + " --bottom annuli --top annuli", true);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("not recognized:") != std::string::npos);

  write_file(path, "not a trace\n");
  const RunResult p = run_cli("recognize " + path.string(), true);
  CHECK(p.exit_code == 2);
  CHECK(p.output.find("parse error:") != std::string::npos);

  const RunResult f = run_cli("recognize " + path.string() + " --bottom mobius", true);
  CHECK(f.exit_code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("search emits a valid descriptor that validates clean", "[cli]") {
  const std::string query = "search --manifold 'L(5,2)' --genus 0 --boundary 2";
  const RunResult first = run_cli(query);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output.rfind("version 1\n", 0) == 0);
  CHECK(first.output.find("piece 0 E") != std::string::npos);

  // Byte-determinism across runs.
  const RunResult second = run_cli(query);
  CHECK(second.output == first.output);

  const auto desc_path = temp_file("found.desc");
  write_file(desc_path, first.output);
  const RunResult check = run_cli("validate " + desc_path.string());
  CHECK(check.exit_code == 0);
  CHECK(check.output == "valid; genus 0, boundary 2\n");
  std::filesystem::remove(desc_path);
}

TEST_CASE("fruitless searches exit 1 with a reason", "[cli]") {
  const RunResult impossible = run_cli("search --manifold S3 --genus 0 --boundary 2");
  CHECK(impossible.exit_code == 1);
  CHECK(impossible.output.find("structurally impossible") != std::string::npos);

  const RunResult exhausted = run_cli(
      "search --manifold S3 --genus 9 --boundary 0 --max-r 1 --max-pieces 1 --max-coeff 2 "
      "--max-crossings 0");
  CHECK(exhausted.exit_code == 1);
  CHECK(exhausted.output.rfind("not found:", 0) == 0);

  const RunResult bad_manifold = run_cli("search --manifold T2 --genus 1 --boundary 0", true);
  CHECK(bad_manifold.exit_code == 2);
}

TEST_CASE("usage errors exit 2", "[cli]") {
  CHECK(run_cli("", true).exit_code == 2);
  CHECK(run_cli("frobnicate", true).exit_code == 2);
  CHECK(run_cli("validate", true).exit_code == 2);
  CHECK(run_cli("--help", true).exit_code == 0);
}
