#include "egdg/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace egdg {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Drop a trailing # comment that is not inside a quoted string.
std::string strip_comment(const std::string& line)
{
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"')
            quoted = !quoted;
        else if (line[i] == '#' && !quoted)
            return line.substr(0, i);
    }
    return line;
}

bool valid_name(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

std::string unquote(const std::string& v, int lineno)
{
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        return v.substr(1, v.size() - 2);
    if (!v.empty() && v.front() == '"')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated string");
    return v;
}

} // namespace

const std::string& Config::raw(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const
{
    return has(key) ? raw(key) : fallback;
}

double Config::get_double(const std::string& key, double fallback) const
{
    return has(key) ? parse_double(raw(key), key) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const
{
    return has(key) ? parse_int(raw(key), key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const
{
    if (!has(key))
        return fallback;
    const std::string& v = raw(key);
    if (v == "true" || v == "1" || v == "on" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "off" || v == "no")
        return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<int> Config::get_int_list(const std::string& key, const std::vector<int>& fallback) const
{
    return has(key) ? parse_int_list(raw(key), key) : fallback;
}

double parse_double(const std::string& s, const std::string& what)
{
    const std::string t = trim(s);
    double v = 0.0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
        throw ConfigError("'" + what + "': expected a number, got '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const std::string& what)
{
    const std::string t = trim(s);
    int v = 0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
        throw ConfigError("'" + what + "': expected an integer, got '" + s + "'");
    return v;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what)
{
    std::string t = trim(s);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']')
            throw ConfigError("'" + what + "': unterminated array");
        t = t.substr(1, t.size() - 2);
    }
    std::vector<int> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty())
            continue;
        out.push_back(parse_int(item, what));
    }
    if (out.empty())
        throw ConfigError("'" + what + "': empty list");
    return out;
}

Config parse_config(const std::string& text)
{
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!valid_name(section))
                throw ConfigError("line " + std::to_string(lineno) + ": bad section name '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_name(key))
            throw ConfigError("line " + std::to_string(lineno) + ": bad key '" + key + "'");
        if (value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": missing value for '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.has(full))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + full + "'");
        cfg.set(full, unquote(value, lineno));
    }
    return cfg;
}

Config load_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

} // namespace egdg
