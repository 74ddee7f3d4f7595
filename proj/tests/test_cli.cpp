#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using std::string;

namespace {

string binary() {
  const char* env = std::getenv("PLDERHAM_BIN");
  REQUIRE(env != nullptr);
  return env;
}

struct RunResult {
  int status;
  string out;
};

RunResult run(const string& args) {
  string cmd = binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

string slurp(const string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("generate then reload is identical") {
  RunResult gen = run("generate torus --out /tmp/plderham_torus.txt");
  REQUIRE(gen.status == 0);
  RunResult val = run("validate /tmp/plderham_torus.txt");
  REQUIRE(val.status == 0);
  REQUIRE(val.out.find("ok") != string::npos);

  // byte-identical repeated generation (full determinism)
  RunResult gen2 = run("generate torus --out /tmp/plderham_torus2.txt");
  REQUIRE(gen2.status == 0);
  REQUIRE(slurp("/tmp/plderham_torus.txt") == slurp("/tmp/plderham_torus2.txt"));
}

TEST_CASE("cohomology of the torus") {
  RunResult r = run("cohomology --space torus --full");
  REQUIRE(r.status == 0);
  REQUIRE(r.out.find("normalized Betti: 1 2 1") != string::npos);
  REQUIRE(r.out.find("agree") != string::npos);
}

TEST_CASE("validate reports the offending pair with --strict failing") {
  std::ofstream f("/tmp/plderham_broken.txt");
  f << "space X\n0 0 :\n0 1 :\n0 2 :\n0 3 :\n"
    << "1 0 : 1 0\n1 1 : 2 0\n1 2 : 3 1\n"
    << "2 0 : 2 1 0\n";
  f.close();
  RunResult r = run("validate /tmp/plderham_broken.txt");
  REQUIRE(r.status == 0);  // reporting mode
  REQUIRE(r.out.find("INVALID") != string::npos);
  REQUIRE(r.out.find("pair") != string::npos);
  RunResult strict = run("validate /tmp/plderham_broken.txt --strict");
  REQUIRE(strict.status == 1);
}

TEST_CASE("derham-check on generated spaces") {
  RunResult r = run("derham-check --space boundary:3 --strict");
  REQUIRE(r.status == 0);
  REQUIRE(r.out.find("A-side Betti: 1 0 1") != string::npos);
  REQUIRE(r.out.find("PASS") != string::npos);

  // structured output is deterministic across runs
  RunResult j1 = run("derham-check --space torus --format structured");
  RunResult j2 = run("derham-check --space torus --format structured");
  REQUIRE(j1.status == 0);
  REQUIRE(j1.out == j2.out);
  REQUIRE(j1.out.find("\"passed\": true") != string::npos);
}

TEST_CASE("bump emits a form file vanishing outside the hexagon") {
  RunResult r = run("bump --space tessellation:2 --l origin --out /tmp/plderham_bump.txt");
  REQUIRE(r.status == 0);
  string text = slurp("/tmp/plderham_bump.txt");
  REQUIRE(text.find("form bump") != string::npos);
  // 1 at the origin vertex (index 0)
  REQUIRE(text.find("at 0 0 : 1 [] d()") != string::npos);
}

TEST_CASE("mv-check commands") {
  RunResult v1 = run("mv-check --v1 --space circle:6 --u U --v V --strict");
  REQUIRE(v1.status == 0);
  REQUIRE(v1.out.find("PASS") != string::npos);

  RunResult v2 = run("mv-check --v2 --scenario circle-glue --strict");
  REQUIRE(v2.status == 0);
  REQUIRE(v2.out.find("PASS") != string::npos);
}

TEST_CASE("cohomology-compact on the line") {
  RunResult r = run("cohomology-compact --space real-line:2 --exhaustion 3 --strict");
  REQUIRE(r.status == 0);
  REQUIRE(r.out.find("H_c: 0 1") != string::npos);
}

TEST_CASE("errors carry named hypotheses and exit nonzero") {
  RunResult r = run("mv-check --v1 --space delta:2 --u boundary --v vertex0");
  REQUIRE(r.status == 2);
  REQUIRE(r.out.find("cover") != string::npos);
}

TEST_CASE("matrix dump") {
  RunResult r = run("cohomology --space delta:1 --dump-matrices /tmp/plderham_mats.txt");
  REQUIRE(r.status == 0);
  string text = slurp("/tmp/plderham_mats.txt");
  // δ0 of the interval: one edge row with entries -1 and 1 on the vertices
  REQUIRE(text.find("matrix d0 1 2") != string::npos);
  bool row_ok = text.find("row 0 : 0:-1 1:1") != string::npos ||
                text.find("row 0 : 0:1 1:-1") != string::npos;
  REQUIRE(row_ok);
}

TEST_CASE("mv-check v2 from a map file") {
  // W = pt glued into V = Δ¹ at vertex 0, U = pt: the pushout is Δ¹ again
  std::ofstream f("/tmp/plderham_v2.txt");
  f << "space W\n0 0 :\n"
    << "space U\n0 0 :\n"
    << "space V\n0 0 :\n0 1 :\n1 0 : 1 0\n"
    << "map f W U\narrow f 0 0 : 0\n"
    << "map i W V\narrow i 0 0 : 0\n";
  f.close();
  RunResult r = run("mv-check --v2 /tmp/plderham_v2.txt --degree 2 --strict");
  REQUIRE(r.status == 0);
  REQUIRE(r.out.find("PASS") != string::npos);
}
