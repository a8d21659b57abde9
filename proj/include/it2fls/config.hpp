#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "it2fls/inference.hpp"

namespace it2fls {

/// Key-value text with `[section]` headers. Lines starting with `;` or `#`
/// are comments. Keys outside any section belong to the section "".
class Config {
 public:
  using Entries = std::vector<std::pair<std::string, std::string>>;

  Config() = default;
  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config load(const std::filesystem::path& path);

  const std::string& source() const { return source_; }
  std::vector<std::string> sections() const;
  bool has_section(const std::string& section) const;
  /// Entries of a section in file order; empty when the section is absent.
  const Entries& entries(const std::string& section) const;

  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& section, const std::string& key, std::int64_t fallback) const;
  /// Numbers separated by whitespace and/or commas.
  std::vector<double> get_doubles(const std::string& section, const std::string& key,
                                  std::vector<double> fallback = {}) const;
  /// Words separated by whitespace and/or commas.
  std::vector<std::string> get_words(const std::string& section, const std::string& key,
                                     std::vector<std::string> fallback = {}) const;

  /// Throws ConfigError naming the first key of `section` not in `allowed`.
  void expect_keys(const std::string& section, std::initializer_list<const char*> allowed) const;

  void set(const std::string& section, const std::string& key, std::string value);

 private:
  std::string source_ = "<config>";
  std::vector<std::pair<std::string, Entries>> sections_;
};

std::vector<double> parse_numbers(const std::string& text, const std::string& what);
std::vector<std::string> split_words(const std::string& text);

/// A rule base read from a config, with its named sets in file order.
struct SystemDefinition {
  FuzzySystem system;
  std::vector<std::pair<std::string, IT2FS>> sets;

  const IT2FS& set(const std::string& name) const;
};

/// Schema:
///   [system]      lo, hi, points, inputs, outputs
///   [set NAME]    either `shape` + `params` (shape: gauss_uncert_std, gauss_uncert_mean)
///                 or `umf`, `umf_params`, `lmf`, `lmf_params` with membership function names
///   [rules]       any key; value `x1 A, x2 B -> y1 C, y2 D`
/// `points_override` replaces [system] points.
SystemDefinition system_from_config(const Config& cfg, std::optional<std::size_t> points_override = std::nullopt);

}  // namespace it2fls
