// varinterp command-line tool.
//
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage or
// configuration error, 3 numerical divergence.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varinterp/checks.hpp"
#include "varinterp/couples.hpp"
#include "varinterp/error.hpp"
#include "varinterp/exponent.hpp"
#include "varinterp/expression.hpp"
#include "varinterp/json_io.hpp"
#include "varinterp/rearrange.hpp"
#include "varinterp/varleb.hpp"

namespace vi = varinterp;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kDivergence = 3;

std::vector<double> parse_t_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const std::string& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t used = 0;
      double t = 0.0;
      try {
        t = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw vi::ConfigError("--t value \"" + tok + "\" is not a number");
      out.push_back(t);
    }
  }
  if (out.empty()) throw vi::ConfigError("--t needs at least one value");
  return out;
}

/// {"values": [...], "grid"?: {...}} or {"expr": "<dsl>"} sampled at the grid nodes.
vi::SampledFunction function_on_grid(const vi::Json& j, const vi::HaarGrid& grid) {
  if (j.is_object() && j.contains("expr")) {
    if (!j.at("expr").is_string()) throw vi::ConfigError("\"expr\" must be a string");
    const vi::Expression expr = vi::Expression::parse(j.at("expr").get<std::string>());
    return vi::SampledFunction::sample(grid, [&](double t) { return expr(t); });
  }
  if (j.is_object() && j.contains("grid")) return vi::sampled_from_json(j);
  vi::Json with_grid = j;
  with_grid["grid"] = vi::to_json(grid);
  return vi::sampled_from_json(with_grid);
}

int run_norm(const std::string& exponent, const std::string& function, const std::string& grid_spec) {
  const vi::ExponentFunction q = vi::parse_exponent(exponent);
  const vi::HaarGrid grid = vi::parse_grid_spec(grid_spec);
  const vi::SampledFunction phi = function_on_grid(vi::load_json_argument(function), grid);
  const auto [q_minus, q_plus] = vi::essential_bounds(q, phi.grid());
  vi::Json out;
  out["exponent"] = q.describe();
  out["grid"] = vi::to_json(phi.grid());
  out["norm"] = vi::luxemburg_norm(phi, q);
  out["modular"] = vi::modular(phi, q);
  out["q_minus"] = q_minus;
  out["q_plus"] = q_plus;
  std::cout << out.dump(2) << "\n";
  return kPass;
}

int run_kfunc(const std::string& couple_arg, const std::string& function, const std::vector<std::string>& t_items) {
  const vi::Couple couple = vi::couple_from_json(vi::load_json_argument(couple_arg));
  const vi::Element f = vi::element_from_json(couple, vi::load_json_argument(function));
  const vi::KFunctional k(couple, f);
  vi::Json values = vi::Json::array();
  for (double t : parse_t_list(t_items)) values.push_back({{"t", t}, {"K", k(t)}});
  vi::Json out;
  out["couple"] = couple.describe();
  out["values"] = std::move(values);
  std::cout << out.dump(2) << "\n";
  return kPass;
}

int run_rearrange(const std::string& function) {
  const vi::AtomFunction f = vi::atoms_from_json(vi::load_json_argument(function));
  std::cout << vi::to_json(vi::rearrangement(f)).dump(2) << "\n";
  return kPass;
}

int run_check(const std::string& id, std::uint64_t seed, int trials, const std::string& grid_spec) {
  vi::CheckOptions options;
  options.seed = seed;
  options.trials = trials;
  options.grid = vi::parse_grid_spec(grid_spec);
  const vi::CheckReport r = vi::run_check(id, options);
  std::cout << vi::to_json(r).dump(2) << "\n";
  return r.pass ? kPass : kCheckFailed;
}

int run_suite(const std::string& config_arg, const std::string& out) {
  vi::SuiteConfig config = vi::suite_config_from_json(vi::load_json_argument(config_arg));
  if (!out.empty()) config.output = out;
  if (config.output.empty()) throw vi::ConfigError("no output directory (use --out or \"output\")");
  const vi::SuiteResult result = vi::run_suite(config, config.output);
  std::cout << vi::csv_header() << "\n";
  for (const vi::CheckReport& r : result.reports) std::cout << vi::csv_row(r) << "\n";
  return result.all_pass ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real interpolation with variable exponent: norms, K-functionals and property checks"};
  app.require_subcommand(1);

  std::string exponent, function, grid_spec = "V=16,spo=32", couple, config, out, id;
  std::vector<std::string> t_items;
  std::uint64_t seed = 42;
  int trials = 100;

  auto* norm = app.add_subcommand("norm", "Luxemburg norm of a sampled function in L^{q(.)}(dt/t)");
  norm->add_option("--exponent", exponent, "Exponent DSL, e.g. \"2 + 1/log(e + 1/t) @0=2 @inf=3\"")->required();
  norm->add_option("--function", function, "JSON or file: {\"values\": [...]} or {\"expr\": \"...\"}")->required();
  norm->add_option("--grid", grid_spec, "Grid, e.g. V=16,spo=32");

  auto* kfunc = app.add_subcommand("kfunc", "K(t, f) for a couple");
  kfunc->add_option("--couple", couple, "Couple JSON or file")->required();
  kfunc->add_option("--function", function, "Element JSON or file")->required();
  kfunc->add_option("--t", t_items, "Values of t (comma-separated or repeated)")->required();

  auto* rearrange = app.add_subcommand("rearrange", "Non-increasing rearrangement of an atom function");
  rearrange->add_option("--function", function, "{\"atoms\": [[value, mass], ...]}")->required();

  auto* check = app.add_subcommand("check", "Run one randomized check");
  check->add_option("id", id, "Check identifier (see `list`)")->required();
  check->add_option("--seed", seed, "Seed");
  check->add_option("--trials", trials, "Corpus size");
  check->add_option("--grid", grid_spec, "Grid, e.g. V=16,spo=32");

  auto* suite = app.add_subcommand("suite", "Run a configured set of checks and write reports");
  suite->add_option("--config", config, "Suite config JSON or file")->required();
  suite->add_option("--out", out, "Output directory (overrides \"output\")");

  auto* list = app.add_subcommand("list", "List check identifiers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*norm) return run_norm(exponent, function, grid_spec);
    if (*kfunc) return run_kfunc(couple, function, t_items);
    if (*rearrange) return run_rearrange(function);
    if (*check) return run_check(id, seed, trials, grid_spec);
    if (*suite) return run_suite(config, out);
    if (*list) {
      for (const std::string& name : vi::check_ids()) std::cout << name << "\n";
      return kPass;
    }
  } catch (const vi::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDivergence;
  } catch (const vi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const vi::Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
