#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace topdc {

// Minimal TOML-subset document: `[section]` / `[a.b]` headers, `key = value`
// lines, `#` comments. Values are doubles, strings, booleans, or single-line
// arrays of doubles or strings. Keys are addressed as "section.key".
class TextConfig {
 public:
  using Value = std::variant<double, std::string, bool, std::vector<double>, std::vector<std::string>>;

  static TextConfig parse(const std::string& text, const std::string& source_name = "<string>");
  static TextConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  bool has_section(const std::string& section) const;
  std::vector<std::string> sections() const;
  // Keys directly under `section`, without the section prefix.
  std::vector<std::string> keys_in(const std::string& section) const;

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::optional<double> optional_number(const std::string& key) const;
  const std::string& string(const std::string& key) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
  bool boolean_or(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::string> strings(const std::string& key) const;
  bool is_string(const std::string& key) const;

  const std::string& source() const { return source_; }
  std::size_t line_of(const std::string& key) const;

 private:
  const Value& at(const std::string& key) const;

  std::string source_;
  std::map<std::string, Value> values_;
  std::map<std::string, std::size_t> lines_;
  std::vector<std::string> section_order_;
};

}  // namespace topdc
