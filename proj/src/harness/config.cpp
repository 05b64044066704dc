#include "ustat/config.hpp"

#include <fstream>
#include <istream>

namespace ustat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

nlohmann::json parse_value(const std::string& text) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) return nlohmann::json(text);
    return j;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
    Config cfg;
    std::string line;
    std::string section;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#' || t.front() == ';') continue;
        if (t.front() == '[') {
            require(t.back() == ']' && t.size() > 2, ErrorCode::Config,
                    source + ":" + std::to_string(number) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        require(eq != std::string::npos, ErrorCode::Config,
                source + ":" + std::to_string(number) + ": expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        require(!key.empty(), ErrorCode::Config, source + ":" + std::to_string(number) + ": empty key");
        cfg.values_[section.empty() ? key : section + "." + key] = parse_value(trim(t.substr(eq + 1)));
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::Config, "cannot open config file " + path);
    return parse(in, path);
}

void Config::set(const std::string& key, const std::string& value) {
    require(!key.empty(), ErrorCode::Config, "empty config key");
    values_[key] = parse_value(value);
}

void Config::set_json(const std::string& key, nlohmann::json value) { values_[key] = std::move(value); }

const nlohmann::json* Config::find(const std::string& section, const std::string& key) const {
    if (!section.empty()) {
        auto it = values_.find(section + "." + key);
        if (it != values_.end()) return &it->second;
    }
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
}

}  // namespace ustat
