#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "varinterp/json_io.hpp"

namespace fs = std::filesystem;
using varinterp::Json;

namespace {

struct Run {
  int code;
  std::string out;
};

/// Runs the CLI with `args` through the shell, capturing stdout and stderr.
Run cli(const std::string& args) {
  const std::string cmd = std::string(VARINTERP_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("norm of a constant exponent") {
    const Run r = cli(R"(norm --exponent 2 --function '{"expr": "1"}' --grid V=2,spo=8)");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    // ||1||_{L^2(dt/t)} on [1/4, 4] is sqrt(ln 16)
    CHECK(j.at("norm").get<double>() == doctest::Approx(std::sqrt(std::log(16.0))).epsilon(1e-12));
    CHECK(j.at("q_minus") == 2.0);
    CHECK(j.at("q_plus") == 2.0);
  }

  TEST_CASE("kfunc and rearrange") {
    const Run k = cli(R"(kfunc --couple '{"kind": "l1_linf"}' --function '{"atoms": [[2, 1], [1, 4]]}' --t 0.5,1,10)");
    REQUIRE(k.code == 0);
    const Json j = Json::parse(k.out);
    CHECK(j.at("values").size() == 3);
    CHECK(j.at("values")[0].at("K").get<double>() == doctest::Approx(1.0));
    CHECK(j.at("values")[1].at("K").get<double>() == doctest::Approx(2.0));
    CHECK(j.at("values")[2].at("K").get<double>() == doctest::Approx(6.0));
    const Run r = cli(R"(rearrange --function '{"atoms": [[1, 2], [3, 1]]}')");
    CHECK(r.code == 0);
    CHECK(r.out.find('3') != std::string::npos);
  }

  TEST_CASE("list and check") {
    const Run l = cli("list");
    CHECK(l.code == 0);
    CHECK(l.out.find("lorentz-id\n") != std::string::npos);
    const Run c = cli("check luxemburg --seed 3 --trials 4");
    CHECK(c.code == 0);
    CHECK(Json::parse(c.out).at("pass") == true);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("check luxemburg --trials 0").code == 2);
    CHECK(cli("check no-such-check").code == 2);
    CHECK(cli(R"(norm --exponent 2 --function '{"values": [1, 2]}' --grid V=1,spo=4)").code == 2);
    CHECK(cli(R"(kfunc --couple '{"kind": "l1_linf"}' --function '{"atoms": [[1, 1]]}' --t x)").code == 2);
    const Run s = cli(R"(norm --exponent "2 +" --function '{"expr": "1"}')");
    CHECK(s.code == 2);
    CHECK(s.out.find("at column 3") != std::string::npos);
  }

  TEST_CASE("unrepresentable norm exits with 3") {
    const Run r = cli(R"(norm --exponent 1 --function '{"values": [1.7e308, 1.7e308]}' --grid V=1,spo=1)");
    CHECK(r.code == 3);
  }

  TEST_CASE("failing check exits with 1") {
    const Run r = cli("check k-property2 --trials 4 --grid V=1,spo=1");
    CHECK(r.code == 1);
    CHECK(Json::parse(r.out).at("pass") == false);
  }

  TEST_CASE("suite output is byte-identical across runs") {
    const fs::path base = fs::temp_directory_path() / "varinterp_cli_suite";
    fs::remove_all(base);
    fs::create_directories(base);
    {
      std::ofstream cfg(base / "config.json");
      cfg << R"({"seed": 5, "trials": 3, "checks": ["sandwich", "symmetry", "hardy-discrete"]})";
    }
    const Run a = cli("suite --config " + (base / "config.json").string() + " --out " + (base / "a").string());
    const Run b = cli("suite --config " + (base / "config.json").string() + " --out " + (base / "b").string());
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("check,instances,constant,drift,pass\n", 0) == 0);
    for (const char* name : {"sandwich.json", "symmetry.json", "hardy-discrete.json", "summary.csv"}) {
      CAPTURE(name);
      CHECK(slurp(base / "a" / name) == slurp(base / "b" / name));
    }
    CHECK(cli(R"(suite --config '{"trials": 1}')").code == 2);
    fs::remove_all(base);
  }
}
