#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace eon {

// Flat key-value configuration text:
//   key = value            one binding per line
//   # comment              '#' starts a comment anywhere on a line
// Values may be single tokens or lists separated by spaces and/or commas.
// Duplicate keys are an error. Lookups of missing keys throw; typed getters
// report the offending line on bad numbers.
class Config {
 public:
  static Config parse(std::istream& in);
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;
  const std::string& get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<long> get_long_list(const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const;

 private:
  struct Entry {
    std::string value;
    long line = 0;
  };
  std::map<std::string, Entry> entries_;
  mutable std::map<std::string, std::string> flat_;  // cache for entries()

  const Entry& require(const std::string& key) const;
};

}  // namespace eon
