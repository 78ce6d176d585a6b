#include "topdc/text_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "topdc/errors.hpp"

namespace topdc {

namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

// Strips a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

bool valid_key(const std::string& key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char ch) {
    return std::isalnum(ch) || ch == '_' || ch == '-' || ch == '.';
  });
}

std::optional<double> parse_number(const std::string& token) {
  std::string cleaned;
  cleaned.reserve(token.size());
  for (char ch : token) {
    if (ch != '_') cleaned.push_back(ch);
  }
  if (cleaned.empty()) return std::nullopt;
  const char* first = cleaned.data();
  if (*first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, cleaned.data() + cleaned.size(), value);
  if (ec != std::errc() || ptr != cleaned.data() + cleaned.size()) return std::nullopt;
  return value;
}

}  // namespace

TextConfig TextConfig::parse(const std::string& text, const std::string& source_name) {
  TextConfig doc;
  doc.source_ = source_name;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) { throw ParseError(source_name, line_no, what); };

  auto parse_string = [&](const std::string& token) {
    if (token.size() < 2 || token.front() != '"' || token.back() != '"') fail("malformed string " + token);
    return token.substr(1, token.size() - 2);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!valid_key(section)) fail("invalid section name '" + section + "'");
      if (std::find(doc.section_order_.begin(), doc.section_order_.end(), section) != doc.section_order_.end()) {
        fail("duplicate section [" + section + "]");
      }
      doc.section_order_.push_back(section);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string rhs = trim(std::string_view(line).substr(eq + 1));
    if (!valid_key(key)) fail("invalid key '" + key + "'");
    if (rhs.empty()) fail("missing value for '" + key + "'");
    std::string full = section.empty() ? key : section + "." + key;
    if (doc.values_.count(full)) fail("duplicate key '" + full + "'");

    Value value;
    if (rhs.front() == '"') {
      value = parse_string(rhs);
    } else if (rhs == "true" || rhs == "false") {
      value = (rhs == "true");
    } else if (rhs.front() == '[') {
      if (rhs.back() != ']') fail("arrays must be on a single line");
      std::string body = trim(std::string_view(rhs).substr(1, rhs.size() - 2));
      std::vector<std::string> items;
      std::string current;
      bool in_string = false;
      for (char ch : body) {
        if (ch == '"') in_string = !in_string;
        if (ch == ',' && !in_string) {
          items.push_back(trim(current));
          current.clear();
        } else {
          current.push_back(ch);
        }
      }
      if (!trim(current).empty()) items.push_back(trim(current));
      if (!items.empty() && items.front().front() == '"') {
        std::vector<std::string> strings;
        for (const auto& item : items) strings.push_back(parse_string(item));
        value = std::move(strings);
      } else {
        std::vector<double> numbers;
        for (const auto& item : items) {
          auto number = parse_number(item);
          if (!number) fail("invalid number '" + item + "' in array");
          numbers.push_back(*number);
        }
        value = std::move(numbers);
      }
    } else {
      auto number = parse_number(rhs);
      if (!number) fail("invalid value '" + rhs + "'");
      value = *number;
    }
    doc.values_.emplace(full, std::move(value));
    doc.lines_.emplace(full, line_no);
  }
  return doc;
}

TextConfig TextConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

bool TextConfig::has_section(const std::string& section) const {
  return std::find(section_order_.begin(), section_order_.end(), section) != section_order_.end();
}

std::vector<std::string> TextConfig::sections() const { return section_order_; }

std::vector<std::string> TextConfig::keys_in(const std::string& section) const {
  std::vector<std::string> keys;
  const std::string prefix = section + ".";
  for (const auto& [key, value] : values_) {
    if (key.rfind(prefix, 0) == 0 && key.find('.', prefix.size()) == std::string::npos) {
      keys.push_back(key.substr(prefix.size()));
    }
  }
  return keys;
}

const TextConfig::Value& TextConfig::at(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw InputError(source_ + ": missing key '" + key + "'");
  return it->second;
}

std::size_t TextConfig::line_of(const std::string& key) const {
  auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

double TextConfig::number(const std::string& key) const {
  const auto& v = at(key);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  throw InputError(source_ + ":" + std::to_string(line_of(key)) + ": '" + key + "' must be a number");
}

double TextConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::optional<double> TextConfig::optional_number(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return number(key);
}

const std::string& TextConfig::string(const std::string& key) const {
  const auto& v = at(key);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw InputError(source_ + ":" + std::to_string(line_of(key)) + ": '" + key + "' must be a string");
}

std::string TextConfig::string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

bool TextConfig::boolean_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  throw InputError(source_ + ":" + std::to_string(line_of(key)) + ": '" + key + "' must be true or false");
}

std::vector<double> TextConfig::numbers(const std::string& key) const {
  const auto& v = at(key);
  if (const auto* a = std::get_if<std::vector<double>>(&v)) return *a;
  if (const auto* d = std::get_if<double>(&v)) return {*d};
  // An empty array parses as an empty numeric array.
  throw InputError(source_ + ":" + std::to_string(line_of(key)) + ": '" + key + "' must be a numeric array");
}

std::vector<std::string> TextConfig::strings(const std::string& key) const {
  const auto& v = at(key);
  if (const auto* a = std::get_if<std::vector<std::string>>(&v)) return *a;
  if (const auto* s = std::get_if<std::string>(&v)) return {*s};
  if (const auto* a = std::get_if<std::vector<double>>(&v); a && a->empty()) return {};
  throw InputError(source_ + ":" + std::to_string(line_of(key)) + ": '" + key + "' must be a string array");
}

bool TextConfig::is_string(const std::string& key) const {
  return has(key) && std::holds_alternative<std::string>(at(key));
}

}  // namespace topdc
