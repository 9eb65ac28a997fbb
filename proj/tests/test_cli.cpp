#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "colouring/report.hpp"

using namespace colouring;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_tool(const std::string& args) {
  const std::string cmd = std::string(TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("q7 json serialization round trips exactly") {
  const Q7 x(Rational(-251801, 128), Rational(95189, 128));
  const auto j = q7_to_json(x);
  CHECK(j["a"] == "-251801/128");
  CHECK(j["b"] == "95189/128");
  CHECK(q7_from_json(j) == x);

  const Q7 y(Rational(3), Rational(-1));
  const auto jy = q7_to_json(y);
  CHECK(jy["decimal"] == "0.35425");
  CHECK(q7_from_json(jy) == y);
}

TEST_CASE("report documents round trip through json and csv") {
  ReportDocument doc;
  doc.tool = "colouring";
  doc.version = "0.1.0";
  doc.config = {{"subcommand", "verify lemma3"}, {"seed", "424243"}};
  CheckRecord rec;
  rec.name = "sample";
  rec.anchor = "Lemma 3, C^3 entry (1,1)";
  rec.pass = true;
  rec.values.emplace_back("entry", Q7(Rational(-129, 8), Rational(50, 8)));
  rec.notes.emplace_back("note, with comma", "value \"quoted\"");
  doc.checks.push_back(rec);
  CheckRecord empty_rec;
  empty_rec.name = "empty";
  empty_rec.anchor = "invented";
  empty_rec.pass = false;
  doc.checks.push_back(empty_rec);

  for (const ReportFormat f : {ReportFormat::Json, ReportFormat::Csv}) {
    const std::string bytes = write_report(doc, f);
    const ReportDocument back = parse_report(bytes, f);
    CHECK(back == doc);
    CHECK(write_report(back, f) == bytes);
  }
  CHECK(!doc.all_pass());
  doc.checks.pop_back();
  CHECK(doc.all_pass());
}

TEST_CASE("empty check list stays valid") {
  ReportDocument doc;
  doc.tool = "colouring";
  doc.version = "0.1.0";
  CHECK(doc.all_pass());
  const ReportDocument back = parse_report(write_report(doc, ReportFormat::Json), ReportFormat::Json);
  CHECK(back == doc);
}

TEST_CASE("verify subcommands succeed and embed the paper values") {
  const RunResult r = run_tool("verify fixedpoint");
  CHECK(r.exit_code == 0);
  const ReportDocument doc = parse_report(r.out, ReportFormat::Json);
  CHECK(doc.all_pass());
  REQUIRE(doc.checks.size() == 1);
  REQUIRE(doc.checks[0].values.size() == 3);
  CHECK(doc.checks[0].values[0].second == Q7(Rational(3), Rational(-1)));
  CHECK(doc.checks[0].values[2].second == Q7(Rational(-5), Rational(2)));

  const RunResult l3 = run_tool("verify lemma3");
  CHECK(l3.exit_code == 0);
  const ReportDocument d3 = parse_report(l3.out, ReportFormat::Json);
  CHECK(d3.all_pass());
  bool found_anchor = false;
  for (const auto& c : d3.checks)
    if (c.anchor == "Lemma 3, C^3 entry (1,1)") found_anchor = true;
  CHECK(found_anchor);
}

TEST_CASE("unknown subcommands and targets are usage errors") {
  CHECK(run_tool("verify bogus").exit_code != 0);
  CHECK(run_tool("frobnicate").exit_code != 0);
  CHECK(run_tool("").exit_code != 0);
}

TEST_CASE("reports are byte-identical across runs") {
  const RunResult a = run_tool("simulate --depth 5 --runs 300 --seed 42");
  const RunResult b = run_tool("simulate --depth 5 --runs 300 --seed 42");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const RunResult c = run_tool("simulate --depth 5 --runs 300 --seed 43");
  CHECK(a.out != c.out);
}

TEST_CASE("csv output parses back") {
  const RunResult r = run_tool("independence --max-factors 3 --format csv");
  CHECK(r.exit_code == 0);
  const ReportDocument doc = parse_report(r.out, ReportFormat::Csv);
  REQUIRE(doc.checks.size() == 1);
  CHECK(doc.checks[0].pass);
  CHECK(doc.checks[0].name == "independence");
}

TEST_CASE("resource guards refuse oversized requests") {
  CHECK(run_tool("independence --ceiling 100").exit_code == 4);
  CHECK(run_tool("construct --depth 12 --node-ceiling 500").exit_code == 4);
}

TEST_CASE("construct and stability verdicts") {
  CHECK(run_tool("construct --depth 9 --seed 7").exit_code == 0);
  CHECK(run_tool("stability --depth 6 --seed 7").exit_code == 0);
  const RunResult gadget = run_tool("gadget --clamp 2 --runs 50000");
  CHECK(gadget.exit_code == 0);
}

TEST_CASE("output file writing") {
  const std::string path = "/tmp/colouring_cli_test_report.json";
  std::remove(path.c_str());
  const RunResult r = run_tool("verify fixedpoint --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  const ReportDocument doc = parse_report(ss.str(), ReportFormat::Json);
  CHECK(doc.all_pass());
  std::remove(path.c_str());
  CHECK(run_tool("verify fixedpoint --out /nonexistent-dir/report.json").exit_code != 0);
}
