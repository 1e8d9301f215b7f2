#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pcalab/program.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(PCALAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string first_line(const std::string& s) {
  auto pos = s.find('\n');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

}  // namespace

TEST_CASE("eval prints prefixes and encodes outcomes in the exit status") {
  auto r = run_cli("eval --model k2m --term \"(k ec:3,1,4;0) ec:0;0\" --depth 3");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) == "3 1 4");

  // s k k is the identity, so the output is the argument's prefix
  auto r2 = run_cli("eval --model k2k --term \"((s k) k) ec:5;5\" --depth 2 --fuel 4000000");
  CHECK(r2.exit_code == 0);
  CHECK(first_line(r2.out) == "5 5");
  auto r2b = run_cli("eval --model k2k --term \"((s k) k) ec:5;0\" --depth 2 --fuel 4000000");
  CHECK(r2b.exit_code == 0);
  CHECK(first_line(r2b.out) == "5 0");

  // golden: program 0 decodes to the diverging program
  auto r3 = run_cli("eval --model k2m --term \"prg:0 ec:0;0\" --depth 1");
  CHECK(r3.exit_code == 2);
  CHECK(first_line(r3.out) == "!");

  auto r4 = run_cli("eval --model b --term \"pc:0=3\" --depth 2");
  CHECK(r4.exit_code == 2);
  CHECK(first_line(r4.out) == "3 !");

  CHECK(run_cli("eval --model k2m --term \"(k ec:1;0\" --depth 1").exit_code == 3);
  CHECK(run_cli("eval --model k2m --term \"pc:0=1 ec:0;0\" --depth 1").exit_code == 3);
  CHECK(run_cli("eval --model nosuch --term \"k\" --depth 1").exit_code == 3);
}

TEST_CASE("asm prints program numbers") {
  auto r = run_cli("asm --term \"(qry (succ in))\"");
  CHECK(r.exit_code == 0);
  auto expected =
      pcalab::program_encode(*pcalab::parse_program("(qry (succ in))"));
  CHECK(first_line(r.out) == expected.str());

  CHECK(run_cli("asm --term \"(nope)\"").exit_code == 3);
}

TEST_CASE("embedding certificates end to end") {
  std::string table_path = "cli_test_table.json";
  std::string cert_path = "cli_test_cert.json";
  {
    std::ofstream f(table_path);
    f << R"({"elements":["x","y"],"table":[["x","x","y"]]})";
  }
  auto r = run_cli("embed --table " + table_path + " --depth 32 --out " + cert_path);
  CHECK(r.exit_code == 0);
  std::ifstream cf(cert_path);
  REQUIRE(cf.good());
  nlohmann::json cert = nlohmann::json::parse(cf);
  CHECK(cert["verdict"] == "pass");
  CHECK(cert["injectivity"]["pass"] == true);

  CHECK(run_cli("embed --table " + table_path + " --depth 0").exit_code == 3);
  CHECK(run_cli("embed --table no_such_file.json").exit_code == 3);

  {
    std::ofstream f(table_path);
    f << R"({"elements":["x"],"table":[["x","x","ghost"]]})";
  }
  CHECK(run_cli("embed --table " + table_path).exit_code == 3);
  std::remove(table_path.c_str());
  std::remove(cert_path.c_str());
}

TEST_CASE("law suites by model") {
  auto r = run_cli("laws --model k2m --trials 12 --depth 16 --seed 42");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("k-law/k2m") != std::string::npos);
  CHECK(r.out.find("barendregt/k2m") != std::string::npos);

  auto r2 = run_cli("laws --model k2k --trials 10 --depth 12 --seed 7");
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("unsupported") != std::string::npos);

  auto r3 = run_cli("laws --model b --trials 10 --depth 12 --seed 7");
  CHECK(r3.exit_code == 0);
  CHECK(r3.out.find("k-law/b") != std::string::npos);
}

TEST_CASE("hnf witnesses") {
  auto r = run_cli("hnf --model k2m");
  CHECK(r.exit_code == 0);
  std::size_t count = 0;
  std::size_t pos = 0;
  while ((pos = r.out.find("separated at position 0", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  CHECK(count == 10);
  CHECK(run_cli("hnf --model k2k").exit_code == 3);
}
