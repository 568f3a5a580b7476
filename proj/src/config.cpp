#include "randfeat/config.hpp"

#include <fstream>
#include <sstream>

#include "randfeat/errors.hpp"

namespace randfeat {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

ConfigMap ConfigMap::parse_string(const std::string& text) {
    ConfigMap config;
    std::stringstream stream(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError("line " + std::to_string(line_no) + ": empty section");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (config.entries_.count(full)) {
            throw ConfigError("duplicate key: " + full);
        }
        config.entries_[full] = value;
    }
    return config;
}

bool ConfigMap::has(const std::string& key) const { return entries_.count(key) > 0; }

void ConfigMap::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

std::string ConfigMap::get_string(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing required key: " + key);
    return it->second;
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

std::int64_t ConfigMap::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        size_t pos = 0;
        const std::int64_t out = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected integer, got '" + v + "'");
    }
}

std::int64_t ConfigMap::get_int(const std::string& key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}

double ConfigMap::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected number, got '" + v + "'");
    }
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::uint64_t ConfigMap::get_u64(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    try {
        size_t pos = 0;
        const std::uint64_t out = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected unsigned integer, got '" + v + "'");
    }
}

std::vector<std::int64_t> ConfigMap::get_int_list(const std::string& key) const {
    std::vector<std::int64_t> out;
    for (const auto& item : split_list(get_string(key))) {
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw ConfigError("key " + key + ": expected integer list item, got '" + item +
                              "'");
        }
    }
    if (out.empty()) throw ConfigError("key " + key + ": empty list");
    return out;
}

std::vector<std::int64_t> ConfigMap::get_int_list(
    const std::string& key, const std::vector<std::int64_t>& fallback) const {
    return has(key) ? get_int_list(key) : fallback;
}

std::vector<std::string> ConfigMap::get_string_list(const std::string& key) const {
    auto out = split_list(get_string(key));
    if (out.empty()) throw ConfigError("key " + key + ": empty list");
    return out;
}

std::vector<std::string> ConfigMap::get_string_list(
    const std::string& key, const std::vector<std::string>& fallback) const {
    return has(key) ? get_string_list(key) : fallback;
}

std::optional<double> ConfigMap::get_optional_double(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const std::string v = get_string(key);
    if (v == "none") return std::nullopt;
    return get_double(key);
}

void ConfigMap::require_known_keys(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : entries_) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown config key: " + key);
        }
    }
}

std::string ConfigMap::canonical_text() const {
    std::ostringstream out;
    for (const auto& [key, value] : entries_) {
        out << key << "=" << value << "\n";
    }
    return out.str();
}

std::uint64_t ConfigMap::hash() const {
    const std::string text = canonical_text();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace randfeat
