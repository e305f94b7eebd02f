#pragma once

// Flat key = value configuration with [section] headers. Keys are stored as
// "section.key"; keys before any section have no prefix. '#' and ';' start
// comment lines.

#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "loadstab/calendar.hpp"
#include "loadstab/csv.hpp"
#include "loadstab/error.hpp"

namespace loadstab {

inline constexpr const char* kConfigEnv = "LOADSTAB_CONFIG";

class RunConfig {
public:
    [[nodiscard]] static RunConfig parse(std::istream& in) {
        RunConfig c;
        std::string line, section;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto t = csv::trim(line);
            if (t.empty() || t.front() == '#' || t.front() == ';') {
                continue;
            }
            if (t.front() == '[') {
                if (t.back() != ']') {
                    throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section");
                }
                section = std::string(csv::trim(t.substr(1, t.size() - 2)));
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
            }
            const auto key = std::string(csv::trim(t.substr(0, eq)));
            if (key.empty()) {
                throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
            }
            c.set(section.empty() ? key : section + "." + key, std::string(csv::trim(t.substr(eq + 1))));
        }
        return c;
    }

    [[nodiscard]] static RunConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) {
            throw InputError("cannot open config file " + path);
        }
        return parse(in);
    }

    /// Config from `path`, else from $LOADSTAB_CONFIG, else empty.
    [[nodiscard]] static RunConfig load_default(const std::string& path = "") {
        if (!path.empty()) {
            return load(path);
        }
        if (const char* env = std::getenv(kConfigEnv); env && *env) {
            return load(env);
        }
        return {};
    }

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }

    [[nodiscard]] std::optional<std::string> find(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] std::string get(const std::string& key, const std::string& fallback) const {
        return find(key).value_or(fallback);
    }

    [[nodiscard]] std::string require(const std::string& key) const {
        const auto v = find(key);
        if (!v || v->empty()) {
            throw ConfigError("missing configuration key '" + key + "'");
        }
        return *v;
    }

    [[nodiscard]] double get_double(const std::string& key, double fallback) const {
        const auto v = find(key);
        if (!v) {
            return fallback;
        }
        const auto d = csv::parse_double(*v);
        if (!d) {
            throw ConfigError("key '" + key + "' is not a number: " + *v);
        }
        return *d;
    }

    [[nodiscard]] int get_int(const std::string& key, int fallback) const {
        const auto v = find(key);
        if (!v) {
            return fallback;
        }
        const auto i = csv::parse_int(*v);
        if (!i) {
            throw ConfigError("key '" + key + "' is not an integer: " + *v);
        }
        return *i;
    }

    [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const {
        const auto v = find(key);
        if (!v) {
            return fallback;
        }
        if (*v == "true" || *v == "1" || *v == "yes") {
            return true;
        }
        if (*v == "false" || *v == "0" || *v == "no") {
            return false;
        }
        throw ConfigError("key '" + key + "' is not a boolean: " + *v);
    }

    /// "2004-2022" or a single year "2018".
    [[nodiscard]] std::optional<YearRange> get_years(const std::string& key) const {
        const auto v = find(key);
        if (!v) {
            return std::nullopt;
        }
        return parse_years(*v);
    }

    [[nodiscard]] static YearRange parse_years(const std::string& text) {
        const auto dash = text.find('-');
        const auto first = csv::parse_int(text.substr(0, dash));
        const auto last = dash == std::string::npos ? first : csv::parse_int(text.substr(dash + 1));
        if (!first || !last || *last < *first) {
            throw ConfigError("bad year range '" + text + "'");
        }
        return {*first, *last};
    }

    [[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace loadstab
