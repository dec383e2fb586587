// End-to-end checks of the covergen binary: exit codes, byte-level
// determinism, and the documented pipelines (construct -> verify,
// experiment -> fit). The binary path comes from the build system.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string tag = std::to_string(++counter);
  const std::string out_path = "/tmp/covgen_cli_out_" + tag;
  const std::string err_path = "/tmp/covgen_cli_err_" + tag;
  const std::string cmd = std::string(COVERGEN_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("cli: identical greedy invocations are byte-identical") {
  const CliResult a = run_cli("greedy --v 30 --k 3 --t 2 --seed 9");
  const CliResult b = run_cli("greedy --v 30 --k 3 --t 2 --seed 9");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.err.find("seed 9") != std::string::npos);
  const CliResult c = run_cli("greedy --v 30 --k 3 --t 2 --seed 10");
  CHECK(c.out != a.out);
}

TEST_CASE("cli: ag output verifies with exit 0") {
  const std::string path = "/tmp/covgen_cli_ag.cov";
  const CliResult mk = run_cli("ag --p 3 --t 2 --out " + path);
  REQUIRE(mk.exit_code == 0);
  const std::string text = slurp(path);
  CHECK(text.rfind("{\"v\":9,\"k\":3,\"t\":2,\"blocks\":12}\n", 0) == 0);
  const CliResult ver = run_cli("verify " + path);
  CHECK(ver.exit_code == 0);
  CHECK(ver.out.find("covering yes") != std::string::npos);
  // Sampled verification also passes on a true covering.
  const CliResult sam = run_cli("verify " + path + " --sample 500 --seed 3");
  CHECK(sam.exit_code == 0);
  std::remove(path.c_str());
}

TEST_CASE("cli: verify exits 1 on a non-covering design") {
  const std::string path = "/tmp/covgen_cli_partial.cov";
  std::ofstream(path) << "{\"v\":6,\"k\":3,\"t\":2,\"blocks\":1}\n0 1 2\n";
  const CliResult r = run_cli("verify " + path);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("covering no") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli: parameter errors exit 2 with an error: line") {
  CHECK(run_cli("greedy --v 3 --k 5 --t 2").exit_code == 2);
  CHECK(run_cli("greedy --nonsense 4").exit_code == 2);
  CHECK(run_cli("verify /tmp/covgen_cli_no_such_file.cov").exit_code == 2);
  CHECK(run_cli("bound --v 7 --k 3").exit_code == 2);  // missing --t
  CHECK(run_cli("").exit_code == 2);                   // no subcommand
  const CliResult r = run_cli("ag --p 6 --t 2");       // p not prime
  CHECK(r.exit_code == 2);
  CHECK(r.err.rfind("error:", 0) == 0);
  CHECK(run_cli("greedy --v 9 --k 3 --t 2 --seed notanumber").exit_code == 2);
  CHECK(run_cli("greedy --v 9 --k 3 --t 2 --mode turbo").exit_code == 2);
}

TEST_CASE("cli: bound prints both lower bounds") {
  const CliResult r = run_cli("bound --v 7 --k 3 --t 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "schonheim 7\ndensity_lb 7\n");
}

TEST_CASE("cli: experiment-density then fit-alpha pipeline") {
  const std::string csv_path = "/tmp/covgen_cli_exp.csv";
  const CliResult exp = run_cli(
      "experiment-density --k 3 --t 2 --vmin 40 --vmax 80 --step 20 "
      "--trials 30 --seed 12 --out " + csv_path);
  REQUIRE(exp.exit_code == 0);
  const std::string csv = slurp(csv_path);
  CHECK(csv.rfind("v,k,t,trials,mean_density,stderr,mean_blocks,seed\n", 0) ==
        0);
  const CliResult fit =
      run_cli("fit-alpha " + csv_path + " --vlo 40 --vhi 80");
  CHECK(fit.exit_code == 0);
  CHECK(fit.out.rfind("{\"k\":3,\"t\":2,\"alpha\":", 0) == 0);
  std::remove(csv_path.c_str());
}

TEST_CASE("cli: experiment CSV is independent of --threads") {
  const std::string args =
      "experiment-density --k 3 --t 2 --vmin 20 --vmax 40 --step 10 "
      "--trials 40 --seed 5";
  const CliResult one = run_cli(args + " --threads 1");
  const CliResult four = run_cli(args + " --threads 4");
  CHECK(one.exit_code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("cli: experiment-tree reports estimate against the closed form") {
  const CliResult r =
      run_cli("experiment-tree --tau 2 --D 2 --trials 3000 --seed 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("estimate ") != std::string::npos);
  CHECK(r.out.find("p_tau 0.4472135954999579") != std::string::npos);
  // Identical invocations agree byte for byte.
  CHECK(run_cli("experiment-tree --tau 2 --D 2 --trials 3000 --seed 4").out ==
        r.out);
}

TEST_CASE("cli: clique-stat reports per-trial fractions and a summary") {
  const CliResult r =
      run_cli("clique-stat --v 30 --k 3 --t 2 --trials 3 --seed 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("trial 0 ") != std::string::npos);
  CHECK(r.out.find("trial 2 ") != std::string::npos);
  CHECK(r.out.find("positive ") != std::string::npos);
}

TEST_CASE("cli: greedy round trip through a file parses and re-verifies") {
  const std::string path = "/tmp/covgen_cli_greedy.cov";
  const CliResult mk =
      run_cli("greedy --v 25 --k 4 --t 2 --seed 6 --out " + path);
  REQUIRE(mk.exit_code == 0);
  CHECK(run_cli("verify " + path).exit_code == 0);
  // The file equals the stdout form of the same invocation.
  const CliResult direct = run_cli("greedy --v 25 --k 4 --t 2 --seed 6");
  CHECK(direct.out == slurp(path));
  std::remove(path.c_str());
}

TEST_CASE("cli: random seeds are accepted and reported") {
  const CliResult r = run_cli("greedy --v 12 --k 3 --t 2 --seed random");
  CHECK(r.exit_code == 0);
  CHECK(r.err.rfind("seed ", 0) == 0);
}

TEST_CASE("cli: induced subcommand round trip at v=500") {
  const std::string dir = "/tmp/covgen_cli_cache";
  const std::string path = "/tmp/covgen_cli_induced.cov";
  std::filesystem::remove_all(dir);
  const CliResult mk = run_cli("induced --v 500 --k 3 --t 2 --seed 0 --cache " +
                               dir + " --out " + path);
  REQUIRE(mk.exit_code == 0);
  CHECK(mk.err.find("p 23") != std::string::npos);
  CHECK(run_cli("verify " + path).exit_code == 0);
  std::remove(path.c_str());
  std::filesystem::remove_all(dir);
}
