#include "it2fls/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "it2fls/error.hpp"

namespace it2fls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const Config& cfg, const std::string& section, const std::string& key) {
  return cfg.source() + ": [" + section + "] " + key;
}

}  // namespace

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string word;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!word.empty()) out.push_back(std::move(word));
      word.clear();
    } else {
      word += c;
    }
  }
  if (!word.empty()) out.push_back(std::move(word));
  return out;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& w : split_words(text)) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size()) throw ConfigError(what + ": '" + w + "' is not a number");
    out.push_back(v);
  }
  return out;
}

Config Config::parse(std::istream& in, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  Config cfg;
  cfg.source_ = source;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      cfg.set("", name, trim(node.data()));
      continue;
    }
    for (const auto& [key, value] : node) cfg.set(name, key, trim(value.data()));
    if (!cfg.has_section(name)) cfg.sections_.emplace_back(name, Entries{});
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse(in, path.string());
}

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  for (const auto& s : sections_) out.push_back(s.first);
  return out;
}

bool Config::has_section(const std::string& section) const {
  for (const auto& s : sections_) {
    if (s.first == section) return true;
  }
  return false;
}

const Config::Entries& Config::entries(const std::string& section) const {
  static const Entries empty;
  for (const auto& s : sections_) {
    if (s.first == section) return s.second;
  }
  return empty;
}

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
  for (const auto& [k, v] : entries(section)) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return get(section, key).value_or(fallback);
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  const auto xs = parse_numbers(*v, where(*this, section, key));
  if (xs.size() != 1) throw ConfigError(where(*this, section, key) + " expects one number");
  return xs[0];
}

std::int64_t Config::get_int(const std::string& section, const std::string& key, std::int64_t fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  std::int64_t out = 0;
  const std::string s = trim(*v);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError(where(*this, section, key) + " expects an integer, got '" + s + "'");
  }
  return out;
}

std::vector<double> Config::get_doubles(const std::string& section, const std::string& key,
                                        std::vector<double> fallback) const {
  const auto v = get(section, key);
  return v ? parse_numbers(*v, where(*this, section, key)) : fallback;
}

std::vector<std::string> Config::get_words(const std::string& section, const std::string& key,
                                           std::vector<std::string> fallback) const {
  const auto v = get(section, key);
  return v ? split_words(*v) : fallback;
}

void Config::expect_keys(const std::string& section, std::initializer_list<const char*> allowed) const {
  for (const auto& [k, v] : entries(section)) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError(where(*this, section, k) + ": unknown key");
  }
}

void Config::set(const std::string& section, const std::string& key, std::string value) {
  for (auto& [name, entries] : sections_) {
    if (name != section) continue;
    for (auto& [k, v] : entries) {
      if (k == key) {
        v = std::move(value);
        return;
      }
    }
    entries.emplace_back(key, std::move(value));
    return;
  }
  sections_.emplace_back(section, Entries{{key, std::move(value)}});
}

// ---------------------------------------------------------------------------

const IT2FS& SystemDefinition::set(const std::string& name) const {
  for (const auto& [n, s] : sets) {
    if (n == name) return s;
  }
  throw ConfigError("no set named '" + name + "'");
}

namespace {

IT2FS set_from_section(const Config& cfg, const std::string& section, const Grid& grid) {
  cfg.expect_keys(section, {"shape", "params", "umf", "umf_params", "lmf", "lmf_params"});
  const std::string ctx = cfg.source() + ": [" + section + "]";
  try {
    if (const auto shape = cfg.get(section, "shape")) {
      const auto params = cfg.get_doubles(section, "params");
      if (*shape == "gauss_uncert_std") return gaussian_uncert_std_set(grid, params);
      if (*shape == "gauss_uncert_mean") return gaussian_uncert_mean_set(grid, params);
      throw ConfigError(ctx + ": unknown shape '" + *shape + "'");
    }
    const auto umf = cfg.get(section, "umf");
    const auto lmf = cfg.get(section, "lmf");
    if (!umf || !lmf) throw ConfigError(ctx + ": needs `shape` or both `umf` and `lmf`");
    return make_it2fs(grid, parse_mf_kind(*umf), cfg.get_doubles(section, "umf_params"), parse_mf_kind(*lmf),
                      cfg.get_doubles(section, "lmf_params"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
}

std::vector<Clause> parse_clauses(const std::string& text, const SystemDefinition& def, const std::string& ctx) {
  std::vector<Clause> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto words = split_words(part);
    if (words.size() != 2) throw ConfigError(ctx + ": clause '" + trim(part) + "' must be `variable set`");
    try {
      out.emplace_back(words[0], def.set(words[1]));
    } catch (const ConfigError&) {
      throw ConfigError(ctx + ": unknown set '" + words[1] + "'");
    }
  }
  return out;
}

}  // namespace

SystemDefinition system_from_config(const Config& cfg, std::optional<std::size_t> points_override) {
  cfg.expect_keys("system", {"lo", "hi", "points", "inputs", "outputs"});
  if (!cfg.has_section("system")) throw ConfigError(cfg.source() + ": missing [system] section");
  const double lo = cfg.get_double("system", "lo", 0.0);
  const double hi = cfg.get_double("system", "hi", 1.0);
  const std::int64_t points =
      points_override ? static_cast<std::int64_t>(*points_override) : cfg.get_int("system", "points", 100);
  if (points < 2) throw ConfigError(cfg.source() + ": [system] points must be at least 2");
  Grid grid = [&] {
    try {
      return Grid::uniform(lo, hi, static_cast<std::size_t>(points));
    } catch (const std::exception& e) {
      throw ConfigError(cfg.source() + ": [system] " + e.what());
    }
  }();

  SystemDefinition def{FuzzySystem(grid), {}};
  for (const auto& w : cfg.get_words("system", "inputs")) def.system.add_input(w);
  for (const auto& w : cfg.get_words("system", "outputs")) def.system.add_output(w);

  for (const auto& section : cfg.sections()) {
    if (section.rfind("set ", 0) != 0) continue;
    const std::string name = trim(section.substr(4));
    if (name.empty()) throw ConfigError(cfg.source() + ": set section without a name");
    for (const auto& s : def.sets) {
      if (s.first == name) throw ConfigError(cfg.source() + ": set '" + name + "' defined twice");
    }
    def.sets.emplace_back(name, set_from_section(cfg, section, grid));
  }

  for (const auto& [key, text] : cfg.entries("rules")) {
    const std::string ctx = cfg.source() + ": [rules] " + key;
    const auto arrow = text.find("->");
    if (arrow == std::string::npos) throw ConfigError(ctx + ": missing '->'");
    auto antecedent = parse_clauses(text.substr(0, arrow), def, ctx);
    auto consequent = parse_clauses(text.substr(arrow + 2), def, ctx);
    try {
      def.system.add_rule(std::move(antecedent), std::move(consequent));
    } catch (const ConfigError& e) {
      throw ConfigError(ctx + ": " + e.what());
    }
  }
  return def;
}

}  // namespace it2fls
