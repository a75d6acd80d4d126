#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

namespace {

namespace fs = std::filesystem;

struct cli_result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the installed binary with the given arguments, capturing both streams.
cli_result run_cli(const std::string& args) {
  const fs::path dir = fs::temp_directory_path();
  const fs::path out = dir / "lsquad_cli_test_stdout.txt";
  const fs::path err = dir / "lsquad_cli_test_stderr.txt";
  const std::string cmd = std::string(LSQUAD_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  cli_result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("a weights run succeeds and prints the config echo") {
  const cli_result r = run_cli("weights --weight 1 --d 0 --N 4");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# command=weights\n", 0) == 0);
  CHECK(r.out.find("node,weight") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("usage problems exit with code 2") {
  SUBCASE("missing required flag") {
    CHECK(run_cli("weights --d 3").code == 2);
  }
  SUBCASE("unknown subcommand") {
    CHECK(run_cli("frobnicate").code == 2);
  }
  SUBCASE("no subcommand") {
    CHECK(run_cli("").code == 2);
  }
  SUBCASE("node count below the degree") {
    const cli_result r = run_cli("weights --N 3 --d 5");
    CHECK(r.code == 2);
    CHECK(r.err.find("N > d") != std::string::npos);
  }
  SUBCASE("malformed range") {
    CHECK(run_cli("sweep --N-range nope").code == 2);
  }
  SUBCASE("weight expression rejected for the interval") {
    CHECK(run_cli("weights --weight \"x*sqrt(1-x^3)\" --interval 0,2 --N 10").code == 2);
  }
}

TEST_CASE("numerical failures exit with code 3") {
  // The weight turns non-finite inside the interval, which the moment
  // computation reports as an evaluation failure.
  const cli_result r = run_cli("weights --weight \"sqrt(x-0.5)\" --N 10 --d 2");
  CHECK(r.code == 3);
  CHECK(!r.err.empty());
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("weights --help").code == 0);
}

TEST_CASE("replay reproduces a file byte for byte") {
  const fs::path dir = fs::temp_directory_path();
  const fs::path first = dir / "lsquad_cli_test_first.csv";
  const fs::path second = dir / "lsquad_cli_test_second.csv";

  const cli_result a = run_cli("weights --weight \"sqrt(1-x^2)\" --d 4 --N 30 --nodes sc "
                               "--seed 7 --method nnls --out " + first.string());
  REQUIRE(a.code == 0);
  const cli_result b = run_cli("replay " + first.string() + " --out " + second.string());
  REQUIRE(b.code == 0);
  CHECK(slurp(first) == slurp(second));
  CHECK(!slurp(first).empty());

  SUBCASE("replay of a missing file is a usage error") {
    CHECK(run_cli("replay /nonexistent/path.csv").code == 2);
  }
}

TEST_CASE("the serial flag changes nothing about the output") {
  const cli_result par = run_cli("sweep --weight 1 --d 2 --N-range 10:20:5 --measure sign");
  const cli_result seq =
      run_cli("sweep --weight 1 --d 2 --N-range 10:20:5 --measure sign --serial");
  CHECK(par.code == 0);
  CHECK(seq.code == 0);
  CHECK(par.out == seq.out);
}
