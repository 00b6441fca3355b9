#ifndef FIAPOWER_CONFIG_HPP
#define FIAPOWER_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fiapower {

// Flat `key = value` configuration text, '#' comments. Unknown keys are
// rejected by the consumer, not the parser.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig parse_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

uint64_t fnv1a64(const std::string& data);

}  // namespace fiapower

#endif
