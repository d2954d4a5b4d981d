#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varinterp/grid.hpp"
#include "varinterp/json_io.hpp"

namespace varinterp {

struct CheckOptions {
  std::uint64_t seed = 42;
  int trials = 100;
  HaarGrid grid{16, 32};
};

/// Outcome of one randomized check over a corpus of instances.
///
/// `constant` is the corpus-wide measured quantity of the check (a bracket
/// constant, a worst ratio or a worst error; see README), `worst_instance`
/// the index attaining it and `refinement_drift` the relative change of the
/// constant under grid refinement where the check measures one.
struct CheckReport {
  std::string check;
  int instances = 0;
  double constant = 0.0;
  int worst_instance = -1;
  bool pass = false;
  std::optional<double> refinement_drift;
};

const std::vector<std::string>& check_ids();
bool is_check_id(std::string_view id);

/// Runs one check; throws ConfigError for unknown ids or trials < 1.
CheckReport run_check(std::string_view id, const CheckOptions& options);

Json to_json(const CheckReport& report);
std::string csv_header();
std::string csv_row(const CheckReport& report);

struct SuiteConfig {
  CheckOptions options;
  std::vector<std::string> checks;
  std::string output;
};

/// {"seed": int, "trials": int, "grid": {"V", "spo"}, "checks": [...], "output": "dir"}
SuiteConfig suite_config_from_json(const Json& j);

struct SuiteResult {
  std::vector<CheckReport> reports;
  bool all_pass = true;
};

/// Runs every configured check and writes <id>.json per check plus
/// summary.csv into `out_dir`, each file written atomically.
SuiteResult run_suite(const SuiteConfig& config, const std::filesystem::path& out_dir);

void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace varinterp
