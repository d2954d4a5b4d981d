#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "varinterp/checks.hpp"
#include "varinterp/error.hpp"

using namespace varinterp;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("varinterp_" + name);
  fs::remove_all(dir);
  return dir;
}

CheckOptions small() {
  CheckOptions o;
  o.trials = 5;
  return o;
}

}  // namespace

TEST_SUITE("checks") {
  TEST_CASE("registry") {
    const auto& ids = check_ids();
    CHECK(ids.size() == 22);
    CHECK(is_check_id("luxemburg"));
    CHECK(is_check_id("key-estimate"));
    CHECK_FALSE(is_check_id("propositions"));
    CHECK_THROWS_AS(run_check("no-such-check", small()), ConfigError);
    CheckOptions zero = small();
    zero.trials = 0;
    CHECK_THROWS_AS(run_check("luxemburg", zero), ConfigError);
  }

  TEST_CASE("every fast check passes on a small corpus") {
    for (const std::string& id : check_ids()) {
      if (id == "reiteration") continue;
      CAPTURE(id);
      const CheckReport r = run_check(id, small());
      CHECK(r.check == id);
      CHECK(r.instances > 0);
      CHECK(r.pass);
    }
  }

  TEST_CASE("same seed gives identical reports, different seed does not") {
    const std::string a = to_json(run_check("k-oracle", small())).dump(2);
    const std::string b = to_json(run_check("k-oracle", small())).dump(2);
    CHECK(a == b);
    CheckOptions other = small();
    other.seed = 7;
    CHECK(to_json(run_check("embedding", other)).dump(2) != to_json(run_check("embedding", small())).dump(2));
  }

  TEST_CASE("report serialization") {
    CheckReport r{"x", 3, 1.5, 2, true, 0.25};
    const Json j = to_json(r);
    CHECK(j.at("check") == "x");
    CHECK(j.at("instances") == 3);
    CHECK(j.at("pass") == true);
    CHECK(j.at("refinement_drift") == 0.25);
    CHECK(csv_header() == "check,instances,constant,drift,pass");
    CHECK(csv_row(r).rfind("x,3,", 0) == 0);
    r.constant = INFINITY;
    r.refinement_drift.reset();
    CHECK(to_json(r).at("constant") == "inf");
  }

  TEST_CASE("suite config parsing") {
    const SuiteConfig c = suite_config_from_json(Json::parse(R"({"seed": 9, "trials": 3, "grid": {"V": 8, "spo": 16},
                                                                 "checks": ["luxemburg", "symmetry"], "output": "out"})"));
    CHECK(c.options.seed == 9);
    CHECK(c.options.trials == 3);
    CHECK(c.options.grid.octaves() == 8);
    CHECK(c.options.grid.samples_per_octave() == 16);
    CHECK(c.checks.size() == 2);
    CHECK(c.output == "out");
    CHECK(suite_config_from_json(Json::object()).checks == check_ids());
    CHECK_THROWS_AS(suite_config_from_json(Json::parse(R"({"checks": ["nope"]})")), ConfigError);
    CHECK_THROWS(suite_config_from_json(Json::parse(R"({"trials": "many"})")));
    CHECK_THROWS(suite_config_from_json(Json::parse(R"({"trials": 0})")));
  }

  TEST_CASE("suite writes one report per check plus a summary, byte-identically") {
    SuiteConfig c;
    c.options = small();
    c.checks = {"luxemburg", "hardy-discrete", "trivial-couple"};
    const fs::path d1 = fresh_dir("suite1");
    const fs::path d2 = fresh_dir("suite2");
    const SuiteResult r1 = run_suite(c, d1);
    run_suite(c, d2);
    CHECK(r1.all_pass);
    CHECK(r1.reports.size() == 3);
    for (const std::string name : {"luxemburg.json", "hardy-discrete.json", "trivial-couple.json", "summary.csv"}) {
      CAPTURE(name);
      REQUIRE(fs::exists(d1 / name));
      CHECK(slurp(d1 / name) == slurp(d2 / name));
    }
    CHECK(Json::parse(slurp(d1 / "luxemburg.json")).at("check") == "luxemburg");
    for (const auto& entry : fs::directory_iterator(d1)) CHECK(entry.path().extension() != ".tmp");
    fs::remove_all(d1);
    fs::remove_all(d2);
  }

  TEST_CASE("atomic write replaces existing content") {
    const fs::path d = fresh_dir("atomic");
    fs::create_directories(d);
    write_file_atomic(d / "f.txt", "first");
    write_file_atomic(d / "f.txt", "second");
    CHECK(slurp(d / "f.txt") == "second");
    CHECK(std::distance(fs::directory_iterator(d), fs::directory_iterator{}) == 1);
    fs::remove_all(d);
  }
}
