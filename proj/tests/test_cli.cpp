#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  }
  q += "'";
  return q;
}

// Runs the CLI with stderr folded into stdout unless told otherwise.
RunResult run_cli(const std::string& args, bool merge_stderr = true,
                  const std::string& env = "") {
  const char* bin = NOETH_BIN;
  std::string cmd = env + (env.empty() ? "" : " ") + shell_quote(bin) + " " + args;
  if (merge_stderr) cmd += " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) {
  return shell_quote(std::string(NOETH_DATA) + "/" + name);
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("space check reports validity and the zariski flag") {
  auto r = run_cli("space check " + data("S1.space"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "valid; zariski: true\n");

  auto fuzzy = run_cli("space check " + data("S3.space"));
  CHECK(fuzzy.exit_code == 0);
  CHECK(fuzzy.out == "valid; zariski: false\n");
}

TEST_CASE("space check rejects malformed input with exit 1") {
  auto r = run_cli("space check " + data("bad.space"));
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "bad.space:"));
}

TEST_CASE("space components matches the pinned transcript") {
  auto r = run_cli("space components " + data("S1.space") + " --set p,q");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "2 components: {p}; {q}\n");

  auto whole = run_cli("space components " + data("S1.space") + " --set eta,p,q");
  CHECK(whole.exit_code == 0);
  CHECK(whole.out == "1 components: {eta,p,q}\n");

  auto empty = run_cli("space components " + data("S1.space") + " --set ''");
  CHECK(empty.exit_code == 0);
  CHECK(empty.out == "0 components\n");

  auto open = run_cli("space components " + data("S1.space") + " --set eta");
  CHECK(open.exit_code == 1);
  CHECK(contains(open.out, "not closed"));
}

TEST_CASE("dyn limit prints the predicted measure with the exact bound") {
  auto r = run_cli("dyn limit " + data("sigma.map") + " --point p --empirical 1000");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "predicted: 1/2*delta{p} + 1/2*delta{q}\n"));
  CHECK(contains(r.out, "empirical n=1000: distance 0; bound 1/500\n"));
}

TEST_CASE("dyn ergodic lists both measures for the swap map") {
  auto r = run_cli("dyn ergodic " + data("sigma.map"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "2 ergodic measures:\n"));
  CHECK(contains(r.out, "1*delta{eta+p+q}"));
  CHECK(contains(r.out, "1/2*delta{p} + 1/2*delta{q}"));
}

TEST_CASE("dyn reverse-limit refuses non-surjective maps with exit 3") {
  auto r = run_cli("dyn reverse-limit " + data("g.map") + " --orbit " + data("ro.json"));
  CHECK(r.exit_code == 3);
  CHECK(contains(r.out, "map not surjective"));
}

TEST_CASE("dyn reverse-limit succeeds on the swap map") {
  auto r = run_cli("dyn reverse-limit " + data("sigma.map") + " --orbit " + data("ro.json") +
                   " --empirical 1000");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "predicted: 1/2*delta{p} + 1/2*delta{q}\n"));
}

TEST_CASE("stdout is byte-identical across reruns of the same config") {
  const std::string args = "verify --cases 15 --max-points 6 --only measures/";
  auto a = run_cli(args, /*merge_stderr=*/false);
  auto b = run_cli(args, /*merge_stderr=*/false);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "PASS"));
  CHECK(!contains(a.out, "timing"));  // timings go to stderr only
}

TEST_CASE("NOETH_SEED overrides the seed flag") {
  const std::string args = "gen space --points 6";
  auto a = run_cli(args + " --seed 11", /*merge_stderr=*/false);
  auto b = run_cli(args + " --seed 999", /*merge_stderr=*/false, "NOETH_SEED=11");
  auto c = run_cli(args + " --seed 11", /*merge_stderr=*/false, "NOETH_SEED=12");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);

  auto bad = run_cli(args, /*merge_stderr=*/true, "NOETH_SEED=zebra");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("gen space regenerates byte-identically per seed") {
  auto a = run_cli("gen space --points 8 --seed 7", /*merge_stderr=*/false);
  auto b = run_cli("gen space --points 8 --seed 7", /*merge_stderr=*/false);
  auto c = run_cli("gen space --points 8 --seed 8", /*merge_stderr=*/false);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(contains(a.out, "\"points\""));
}

TEST_CASE("verify exits 0 clean and 2 under a mutant") {
  auto clean = run_cli("verify --cases 10 --max-points 5 --only topology/");
  CHECK(clean.exit_code == 0);
  CHECK(contains(clean.out, "PASS topology/"));

  auto mutant =
      run_cli("verify --cases 10 --max-points 6 --mutant sc-decompose-identity");
  CHECK(mutant.exit_code == 2);
  CHECK(contains(mutant.out, "FAIL"));

  auto unknown = run_cli("verify --cases 10 --mutant not-a-mutant");
  CHECK(unknown.exit_code == 1);
}

TEST_CASE("measure integrate evaluates the fixture pairing") {
  auto r = run_cli("measure integrate --space " + data("S1.space") + " --measure " +
                   data("mu1.measure") + " --function " + data("tau1.fn"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "integral: 5/6\n"));
}

TEST_CASE("cofinite subcommands reproduce the worked examples") {
  auto d = run_cli("cofinite delta --space " + data("uncountable.cof") + " --set " +
                   data("set_fin.json"));
  CHECK(d.exit_code == 0);
  CHECK(d.out == "delta_Y(finite{1,2,3}) = 0\n");

  auto gap = run_cli("cofinite lambda-gap --space " + data("uncountable.cof"));
  CHECK(gap.exit_code == 0);
  CHECK(contains(gap.out, "gap: 1"));

  auto bad = run_cli("cofinite lambda-gap --space " + data("countable.cof"));
  CHECK(bad.exit_code == 1);

  auto shift = run_cli("cofinite shift-report --space " + data("integers.cof"));
  CHECK(shift.exit_code == 0);
  CHECK(contains(shift.out, "ergodic measures on the base: 0"));
  CHECK(contains(shift.out, "ergodic measures on the completion: 1"));
}

TEST_CASE("unknown subcommands and missing files exit 1") {
  CHECK(run_cli("such command").exit_code == 1);
  CHECK(run_cli("space check " + data("missing.space")).exit_code == 1);
}
