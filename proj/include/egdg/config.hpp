#ifndef EGDG_CONFIG_HPP
#define EGDG_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace egdg {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat "section.key" -> raw value store for a TOML-style subset:
///   [section]
///   key = 1.5            # numbers, true/false
///   name = "sommerfeld"  # quoted or bare strings
///   N = [400, 800]       # one-line arrays
class Config {
public:
    bool has(const std::string& key) const { return values_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    const std::string& raw(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

Config parse_config(const std::string& text);
Config load_config_file(const std::string& path);

double parse_double(const std::string& s, const std::string& what);
int parse_int(const std::string& s, const std::string& what);
std::vector<int> parse_int_list(const std::string& s, const std::string& what);

} // namespace egdg

#endif
