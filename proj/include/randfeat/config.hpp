#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace randfeat {

/// Flat key/value configuration parsed from an INI-style file: `[section]`
/// headers, `key = value` lines, `#`/`;` comments. Keys are addressed as
/// "section.key". Unknown keys are rejected at validation time.
class ConfigMap {
public:
    static ConfigMap parse_file(const std::string& path);
    static ConfigMap parse_string(const std::string& text);

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<std::int64_t> get_int_list(const std::string& key) const;
    std::vector<std::int64_t> get_int_list(const std::string& key,
                                           const std::vector<std::int64_t>& fallback) const;
    std::vector<std::string> get_string_list(const std::string& key) const;
    std::vector<std::string> get_string_list(
        const std::string& key, const std::vector<std::string>& fallback) const;
    /// "none" (or absence) maps to nullopt
    std::optional<double> get_optional_double(const std::string& key) const;

    /// Throws ConfigError naming the first key not in `allowed`.
    void require_known_keys(const std::set<std::string>& allowed) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    /// FNV-1a over the sorted key=value lines.
    std::uint64_t hash() const;
    std::string canonical_text() const;

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace randfeat
