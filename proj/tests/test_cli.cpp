#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

#ifndef SCC_CLI
#define SCC_CLI "scc"
#endif
#ifndef SCC_FIXTURES
#define SCC_FIXTURES "fixtures"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  std::string cmd = std::string(SCC_CLI) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, got);
  int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) { return std::string(SCC_FIXTURES) + "/" + name; }

std::filesystem::path scratch_dir() {
  auto d = std::filesystem::temp_directory_path() / "scc_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("check " + fx("commutator.pres")).code == 2);
  CHECK(run("--bogus check --lambda 1/3 " + fx("commutator.pres")).code == 2);
  CHECK(run("check --lambda 1/3 /nonexistent.pres").code == 2);
  CHECK(run("check --lambda x/3 " + fx("commutator.pres")).code == 2);
}

TEST_CASE("small cancellation check") {
  Run ok = run("--no-meta check --lambda 1/3 " + fx("commutator.pres"));
  CHECK(ok.code == 0);
  auto j = nlohmann::json::parse(ok.out);
  CHECK(j["pass"] == true);
  CHECK(j["schema"] == 1);
  CHECK_FALSE(j.contains("meta"));

  Run bad = run("--no-meta check --lambda 1/4 " + fx("commutator.pres"));
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["pass"] == false);
}

TEST_CASE("family generation and joint check") {
  auto path = scratch_dir() / "family6_8.pres";
  CHECK(run("--out " + path.string() + " family gen --from 6 --to 8").code == 0);
  Run r = run("--no-meta check --lambda 1/24 " + path.string());
  CHECK(r.code == 0);
  CHECK(run("family gen --n 4").code != 0);
}

TEST_CASE("output is deterministic without meta") {
  std::string args = "--no-meta pieces stats " + fx("spath2.pres");
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Run m = run("pieces stats " + fx("spath2.pres"));
  CHECK(nlohmann::json::parse(m.out).contains("meta"));
}

TEST_CASE("serialize round trip") {
  Run s = run("pres serialize " + fx("spath2.pres"));
  REQUIRE(s.code == 0);
  auto path = scratch_dir() / "round.pres";
  std::ofstream(path) << s.out;
  CHECK(run("pres serialize " + path.string()).out == s.out);
  CHECK(run("pres validate " + path.string()).code == 0);
}

TEST_CASE("cone export formats") {
  Run dot = run("cone export --format dot --relator 1 " + fx("spath.pres"));
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("graph cone_1 {", 0) == 0);
  Run edges = run("cone export --spec S --relator 1 " + fx("spath.pres"));
  CHECK(edges.code == 0);
  CHECK(std::count(edges.out.begin(), edges.out.end(), '\n') == 25);
  CHECK(run("cone export --format png --relator 1 " + fx("spath.pres")).code == 2);
  CHECK(run("cone build --relator 9 " + fx("spath.pres")).code == 2);
}

TEST_CASE("group and poset commands") {
  Run ball = run("--no-meta group ball --radius 2 " + fx("dehn_wc.pres"));
  CHECK(ball.code == 0);
  Run trivial = run("--no-meta poset trivial " + fx("spath2.pres"));
  CHECK(trivial.code == 0);
  Run notsc = run("--no-meta group ball --radius 2 " + fx("commutator.pres"));
  CHECK(notsc.code == 1);
}
