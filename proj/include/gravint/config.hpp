#pragma once

// Flat structured-text configuration:
//
//   # comment
//   [section]
//   key = value
//
// Keys before the first section header belong to the "" section. Values are
// kept as trimmed strings and converted on access.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace gravint {

class Config {
public:
    static Config parse(std::istream& in, std::string source = "<input>")
    {
        Config cfg;
        cfg.source_ = std::move(source);
        std::string line;
        std::string section;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string text = trim(strip_comment(line));
            if (text.empty()) continue;
            if (text.front() == '[') {
                if (text.back() != ']') cfg.fail(line_no, "unterminated section header");
                section = trim(text.substr(1, text.size() - 2));
                if (section.empty()) cfg.fail(line_no, "empty section name");
                cfg.values_[section];
                continue;
            }
            const auto eq = text.find('=');
            if (eq == std::string::npos) cfg.fail(line_no, "expected key = value");
            const std::string key = trim(text.substr(0, eq));
            const std::string value = trim(text.substr(eq + 1));
            if (key.empty()) cfg.fail(line_no, "missing key");
            auto& entries = cfg.values_[section];
            if (entries.count(key)) cfg.fail(line_no, "duplicate key '" + key + "'");
            entries[key] = value;
        }
        return cfg;
    }

    static Config load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        Config cfg = parse(in, path);
        cfg.base_dir_ = std::filesystem::path(path).parent_path();
        return cfg;
    }

    bool has_section(const std::string& section) const { return values_.count(section) > 0; }

    bool has(const std::string& section, const std::string& key) const
    {
        const auto s = values_.find(section);
        return s != values_.end() && s->second.count(key) > 0;
    }

    std::optional<std::string> get(const std::string& section, const std::string& key) const
    {
        const auto s = values_.find(section);
        if (s == values_.end()) return std::nullopt;
        const auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second;
    }

    std::string text(const std::string& section, const std::string& key) const
    {
        auto v = get(section, key);
        if (!v) throw ConfigError(source_ + ": missing [" + section + "] " + key);
        return *v;
    }

    std::string text(const std::string& section, const std::string& key, const std::string& fallback) const
    {
        return get(section, key).value_or(fallback);
    }

    double number(const std::string& section, const std::string& key) const
    {
        return to_number(text(section, key), section, key);
    }

    double number(const std::string& section, const std::string& key, double fallback) const
    {
        const auto v = get(section, key);
        return v ? to_number(*v, section, key) : fallback;
    }

    // Rejects keys not in `allowed` (typo guard).
    void expect_keys(const std::string& section, std::initializer_list<std::string_view> allowed) const
    {
        const auto s = values_.find(section);
        if (s == values_.end()) return;
        for (const auto& [key, value] : s->second) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                throw ConfigError(source_ + ": unknown key [" + section + "] " + key);
        }
    }

    void expect_sections(std::initializer_list<std::string_view> allowed) const
    {
        for (const auto& [name, entries] : values_) {
            if (name.empty() && entries.empty()) continue;
            if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
                throw ConfigError(source_ + ": unknown section [" + name + "]");
        }
    }

    // Resolves a path relative to the config file's directory.
    std::string resolve(const std::string& path) const
    {
        const std::filesystem::path p(path);
        if (p.is_absolute() || base_dir_.empty()) return path;
        return (base_dir_ / p).string();
    }

    const std::string& source() const { return source_; }

    static std::vector<std::string> split(const std::string& value, char separator)
    {
        std::vector<std::string> parts;
        std::string item;
        std::istringstream in(value);
        while (std::getline(in, item, separator)) {
            item = trim(item);
            if (!item.empty()) parts.push_back(item);
        }
        return parts;
    }

    static double parse_number(const std::string& value, const std::string& what)
    {
        std::size_t used = 0;
        double out = 0.0;
        try {
            out = std::stod(value, &used);
        } catch (const std::exception&) {
            throw ConfigError("not a number for " + what + ": '" + value + "'");
        }
        if (used != value.size()) throw ConfigError("trailing characters in " + what + ": '" + value + "'");
        return out;
    }

private:
    static std::string strip_comment(const std::string& line)
    {
        const auto hash = line.find('#');
        return hash == std::string::npos ? line : line.substr(0, hash);
    }

    static std::string trim(const std::string& s)
    {
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) return {};
        const auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    }

    double to_number(const std::string& value, const std::string& section, const std::string& key) const
    {
        return parse_number(value, source_ + " [" + section + "] " + key);
    }

    [[noreturn]] void fail(int line_no, const std::string& message) const
    {
        throw ConfigError(source_ + ":" + std::to_string(line_no) + ": " + message);
    }

    std::string source_;
    std::filesystem::path base_dir_;
    std::map<std::string, std::map<std::string, std::string>> values_;
};

}  // namespace gravint
