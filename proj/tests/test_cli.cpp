#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "biphoton/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = biphoton::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("biphoton_cli_" + name);
}

}  // namespace

TEST_CASE("pc on Bell and product states") {
  auto r = run({"pc", "--state", "bell:psi-minus", "--l", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "P_c = 1.000000"));
  CHECK(contains(r.out, "witness = entangled"));

  r = run({"pc", "--state", "product", "--l1", "1", "--l2", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "P_c = 0.500000"));
  CHECK(contains(r.out, "witness = inconclusive"));

  r = run({"pc", "--state", "product", "--l1", "2", "--l2", "-2"});
  CHECK(contains(r.out, "P_c = 0.000000"));
}

TEST_CASE("classify") {
  auto r = run({"classify", "--state", "bell:phi-plus"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "class = symmetric"));
  r = run({"classify", "--state", "bell:psi-minus", "--l", "2"});
  CHECK(contains(r.out, "class = antisymmetric"));
  r = run({"classify", "--state", "spdc", "--pump", "hg:0,1", "--grid-n", "12", "--half-width", "4"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "class = antisymmetric"));
}

TEST_CASE("configuration errors exit with code 2 and name the key") {
  auto r = run({"pc", "--state", "bell:psi-zero"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "--state"));
  r = run({"pc", "--state", "bell:psi-minus", "--l", "0"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "--l"));
  r = run({"pc", "--state", "product", "--grid-n", "7"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "--grid-n"));
  r = run({"pc", "--state", "spdc", "--pump", "hg:1"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "--pump"));
  r = run({"scan", "--steps", "1"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "--steps"));
  r = run({"scan", "--range", "3:1"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "--range"));
  r = run({"pc"});
  CHECK(r.code == 2);
  r = run({"pc", "--state", "product", "--bogus", "1"});
  CHECK(r.code == 2);
  r = run({});
  CHECK(r.code == 2);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "Config file"));
}

TEST_CASE("config file with flag override") {
  const auto path = temp_path("config.ini");
  {
    std::ofstream f(path);
    f << "state = \"bell:psi-plus\"\nl = 2\n";
  }
  auto r = run({"pc", "--config", path.string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "P_c = 0.000000"));
  r = run({"pc", "--config", path.string(), "--state", "bell:psi-minus"});
  CHECK(contains(r.out, "P_c = 1.000000"));
  {
    std::ofstream f(path);
    f << "state = \"bell:psi-plus\"\nunknown-key = 3\n";
  }
  r = run({"pc", "--config", path.string()});
  CHECK(r.code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("scan writes a reproducible CSV") {
  const auto a = temp_path("a.csv");
  const auto b = temp_path("b.csv");
  const std::vector<std::string> base = {"scan", "--parameter", "alpha-plus", "--range", "0:3.14159",
                                         "--steps", "3", "--zeta", "2", "--grid-n", "64"};
  auto args = base;
  args.insert(args.end(), {"--out", a.string()});
  auto r = run(args);
  REQUIRE(r.code == 0);
  args = base;
  args.insert(args.end(), {"--out", b.string(), "--threads", "2"});
  REQUIRE(run(args).code == 0);

  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  const std::string csv = slurp(a);
  CHECK(csv == slurp(b));
  CHECK(csv.rfind("parameter,conditional_pc,oracle_pc,throughput,flag\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(contains(csv, ",ok\n"));
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  const auto stdout_run = run(base);
  CHECK(stdout_run.code == 0);
  CHECK(stdout_run.out == csv);
}

TEST_CASE("degenerate scan rows are flagged in the CSV") {
  const auto r = run({"scan", "--range", "0:1", "--steps", "2", "--grid-n", "32"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "0.0000000000,nan,nan,"));
  CHECK(contains(r.out, ",degenerate\n"));
}

TEST_CASE("numerical degeneracy exits with code 3") {
  const auto r = run({"pc", "--state", "thin-crystal", "--mzi", "--zeta", "0", "--alpha-plus", "0",
                      "--grid-n", "32"});
  CHECK(r.code == 3);
  CHECK(contains(r.err, "numerical error"));
}

TEST_CASE("unwritable output exits with code 4") {
  const auto r = run({"scan", "--steps", "2", "--grid-n", "32", "--out", "/nonexistent/dir/x.csv"});
  CHECK(r.code == 4);
}
