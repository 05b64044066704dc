#pragma once

// Flat key/value configuration: `[section]` headers and `key = <JSON value>`
// lines; '#' and ';' start comments. Keys are stored as "section.key".
// Lookups for (section, key) fall back to the bare key, so a setting can be
// shared by every experiment or scoped to one.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ustat/error.hpp"

namespace ustat {

class Config {
public:
    static Config parse(std::istream& in, const std::string& source = "<config>");
    static Config load(const std::string& path);

    // `value` is parsed as JSON; anything that is not valid JSON is kept as a string.
    void set(const std::string& key, const std::string& value);
    void set_json(const std::string& key, nlohmann::json value);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, nlohmann::json>& entries() const noexcept { return values_; }

    template <class T>
    T get(const std::string& section, const std::string& key, const T& fallback) const {
        const nlohmann::json* v = find(section, key);
        if (!v) return fallback;
        try {
            return v->get<T>();
        } catch (const nlohmann::json::exception&) {
            fail(ErrorCode::Config, "config key '" + key + "' has the wrong type: " + v->dump());
        }
    }

private:
    const nlohmann::json* find(const std::string& section, const std::string& key) const;

    std::map<std::string, nlohmann::json> values_;
};

}  // namespace ustat
