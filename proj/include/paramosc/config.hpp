#pragma once

#include "paramosc/params.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace paramosc {

/// INI-style run configuration flattened to "section.key" entries. Every
/// getter records the value it resolved (default or explicit), so the output
/// header can list the full effective configuration.
class Config {
public:
    Config() = default;

    static Config from_file(const std::filesystem::path& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    /// True when any key starts with "section.".
    bool has_section(const std::string& section) const;
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    double get_double(const std::string& key, double fallback);
    std::int64_t get_int(const std::string& key, std::int64_t fallback);
    bool get_bool(const std::string& key, bool fallback);
    std::string get_string(const std::string& key, const std::string& fallback);

    /// Comma-separated list or inclusive linear range "start:stop:count".
    /// Throws ConfigError for an empty or malformed grid.
    std::vector<double> get_grid(const std::string& key, const std::string& fallback);

    /// Records a derived value in the resolved view without reading a key.
    void note(const std::string& key, const std::string& value) { resolved_[key] = value; }

    /// Throws ConfigError naming any key no getter has read.
    void reject_unused() const;

    const std::map<std::string, std::string>& resolved() const { return resolved_; }

private:
    std::optional<std::string> lookup(const std::string& key);

    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
    std::map<std::string, std::string> resolved_;
};

std::vector<double> parse_grid(const std::string& text);

struct ResolvedParams {
    ScaledParams scaled;
    std::optional<LabFrameParams> lab;
    std::optional<DerivedScales> scales;
    std::optional<ValidityReport> validity;
};

/// Reads exactly one of the [lab] and [scaled] blocks; `fallback` is used
/// field by field for a [scaled] block and entirely when neither is present.
ResolvedParams resolve_params(Config& cfg, const ScaledParams& fallback);

} // namespace paramosc
