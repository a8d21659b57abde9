#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "it2fls/config.hpp"
#include "it2fls/dynamics.hpp"

namespace it2fls {

/// Settings for one CLI run. Unset optionals fall back to the config file,
/// then to the built-in defaults.
struct RunManifest {
  std::string subcommand;
  std::optional<std::filesystem::path> config_path;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
  std::optional<Algorithm> algorithm;
  std::optional<Method> method;
  std::optional<std::size_t> domain_points;
  std::optional<double> dt;
  bool plot = false;

  // simple
  std::optional<double> x1;
  std::optional<double> x2;

  // mackey-glass
  bool skip_optimize = false;
  std::optional<std::filesystem::path> params_path;
  std::optional<std::size_t> iterations;

  // it2fpid
  std::vector<std::string> plants;
  std::vector<Algorithm> algorithms;
  std::optional<RulePZ> rule_pz;
};

struct RunReport {
  std::vector<std::filesystem::path> artifacts;
  /// Human-readable summary lines.
  std::vector<std::string> notes;
  /// Invariant checks that did not hold; a run with failures exits non-zero.
  std::vector<std::string> failures;
};

/// Built-in configuration text for "simple", "mackey-glass" or "it2fpid".
std::string_view default_config_text(std::string_view subcommand);

/// The manifest's config file, or the built-in default for its subcommand.
Config load_run_config(const RunManifest& manifest);

RunReport cmd_simple(const RunManifest& manifest);
RunReport cmd_mackey_glass(const RunManifest& manifest);
RunReport cmd_it2fpid(const RunManifest& manifest);

/// Dispatches on manifest.subcommand.
RunReport run(const RunManifest& manifest);

/// Decoded predictor parameters as rows `set,mean,std_center,std_spread` (A1..O3).
void write_predictor_params(std::ostream& out, std::span<const double> params);
std::vector<double> read_predictor_params(std::istream& in);

}  // namespace it2fls
