#include "eon/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "eon/errors.hpp"

namespace eon {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> tokenize(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : value) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double parse_double_token(const std::string& tok, long line) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw parse_error("expected a number, got '" + tok + "'", line);
  return v;
}

long parse_long_token(const std::string& tok, long line) {
  long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw parse_error("expected an integer, got '" + tok + "'", line);
  return v;
}

}  // namespace

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw parse_error("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw parse_error("empty key", line_no);
    if (cfg.entries_.count(key))
      throw parse_error("duplicate key '" + key + "'", line_no);
    cfg.entries_[key] = {value, line_no};
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io_error("cannot open config '" + path + "'");
  return parse(f);
}

Config Config::parse_string(const std::string& text) {
  std::istringstream ss(text);
  return parse(ss);
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

const Config::Entry& Config::require(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw invalid_argument("missing config key '" + key + "'");
  return it->second;
}

const std::string& Config::get_string(const std::string& key) const {
  return require(key).value;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? require(key).value : fallback;
}

double Config::get_double(const std::string& key) const {
  const Entry& e = require(key);
  return parse_double_token(e.value, e.line);
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long Config::get_long(const std::string& key) const {
  const Entry& e = require(key);
  return parse_long_token(e.value, e.line);
}

long Config::get_long(const std::string& key, long fallback) const {
  return has(key) ? get_long(key) : fallback;
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = require(key);
  std::uint64_t v = 0;
  const auto res = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (res.ec != std::errc{} || res.ptr != e.value.data() + e.value.size())
    throw parse_error("expected a non-negative integer seed, got '" + e.value + "'", e.line);
  return v;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  const Entry& e = require(key);
  std::vector<double> out;
  for (const std::string& tok : tokenize(e.value))
    out.push_back(parse_double_token(tok, e.line));
  if (out.empty()) throw parse_error("empty list for key '" + key + "'", e.line);
  return out;
}

std::vector<long> Config::get_long_list(const std::string& key) const {
  const Entry& e = require(key);
  std::vector<long> out;
  for (const std::string& tok : tokenize(e.value))
    out.push_back(parse_long_token(tok, e.line));
  if (out.empty()) throw parse_error("empty list for key '" + key + "'", e.line);
  return out;
}

std::vector<std::string> Config::get_string_list(const std::string& key) const {
  const Entry& e = require(key);
  std::vector<std::string> out = tokenize(e.value);
  if (out.empty()) throw parse_error("empty list for key '" + key + "'", e.line);
  return out;
}

const std::map<std::string, std::string>& Config::entries() const {
  flat_.clear();
  for (const auto& [k, v] : entries_) flat_[k] = v.value;
  return flat_;
}

}  // namespace eon
