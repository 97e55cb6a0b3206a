#include "paramosc/config.hpp"

#include "paramosc/error.hpp"
#include "paramosc/output.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace paramosc {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
    return v;
}

std::int64_t to_int(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    }
    return v;
}

Config from_stream(std::istream& in)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    Config cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            cfg.set(section, trim(body.data()));
            continue;
        }
        for (const auto& [key, value] : body) {
            cfg.set(section + "." + key, trim(value.data()));
        }
    }
    return cfg;
}

} // namespace

Config Config::from_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    return from_stream(in);
}

Config Config::from_string(const std::string& text)
{
    std::istringstream in(text);
    return from_stream(in);
}

bool Config::has_section(const std::string& section) const
{
    const std::string prefix = section + ".";
    auto it = values_.lower_bound(prefix);
    return it != values_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
}

std::optional<std::string> Config::lookup(const std::string& key)
{
    used_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

double Config::get_double(const std::string& key, double fallback)
{
    const auto raw = lookup(key);
    const double v = raw ? to_double(key, *raw) : fallback;
    if (!std::isfinite(v)) {
        throw ConfigError(key + ": value must be finite");
    }
    resolved_[key] = format_number(v);
    return v;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback)
{
    const auto raw = lookup(key);
    const std::int64_t v = raw ? to_int(key, *raw) : fallback;
    resolved_[key] = std::to_string(v);
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback)
{
    const auto raw = lookup(key);
    bool v = fallback;
    if (raw) {
        std::string t = trim(*raw);
        std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
        if (t == "true" || t == "1" || t == "yes" || t == "on") {
            v = true;
        } else if (t == "false" || t == "0" || t == "no" || t == "off") {
            v = false;
        } else {
            throw ConfigError(key + ": expected a boolean, got '" + *raw + "'");
        }
    }
    resolved_[key] = v ? "true" : "false";
    return v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback)
{
    const auto raw = lookup(key);
    std::string v = raw ? trim(*raw) : fallback;
    resolved_[key] = v;
    return v;
}

std::vector<double> Config::get_grid(const std::string& key, const std::string& fallback)
{
    const auto raw = lookup(key);
    const std::string text = raw ? *raw : fallback;
    std::vector<double> grid;
    try {
        grid = parse_grid(text);
    } catch (const ConfigError& e) {
        throw ConfigError(key + ": " + e.what());
    }
    resolved_[key] = trim(text);
    return grid;
}

void Config::reject_unused() const
{
    std::string unknown;
    for (const auto& [key, value] : values_) {
        if (used_.count(key) == 0) {
            unknown += (unknown.empty() ? "" : ", ") + key;
        }
    }
    if (!unknown.empty()) {
        throw ConfigError("unknown config keys: " + unknown);
    }
}

std::vector<double> parse_grid(const std::string& text)
{
    const std::string t = trim(text);
    if (t.empty()) {
        throw ConfigError("grid is empty");
    }
    std::vector<double> out;
    if (t.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(t);
        for (std::string p; std::getline(ss, p, ':');) {
            parts.push_back(p);
        }
        if (parts.size() != 3) {
            throw ConfigError("range must be start:stop:count");
        }
        const double a = to_double("range start", parts[0]);
        const double b = to_double("range stop", parts[1]);
        const std::int64_t n = to_int("range count", parts[2]);
        if (n < 1) {
            throw ConfigError("range count must be positive");
        }
        if (n == 1) {
            return {a};
        }
        for (std::int64_t i = 0; i < n; ++i) {
            // Endpoints are reproduced exactly.
            const double w = static_cast<double>(i) / static_cast<double>(n - 1);
            out.push_back(i == n - 1 ? b : a + (b - a) * w);
        }
        return out;
    }
    std::stringstream ss(t);
    for (std::string item; std::getline(ss, item, ',');) {
        if (trim(item).empty()) {
            throw ConfigError("empty grid entry in '" + text + "'");
        }
        out.push_back(to_double("grid entry", item));
    }
    return out;
}

ResolvedParams resolve_params(Config& cfg, const ScaledParams& fallback)
{
    const bool lab = cfg.has_section("lab");
    const bool scaled = cfg.has_section("scaled");
    if (lab && scaled) {
        throw ConfigError("config has both [lab] and [scaled] blocks; give exactly one");
    }
    ResolvedParams out;
    if (lab) {
        LabFrameParams p;
        p.omega0 = cfg.get_double("lab.omega0", p.omega0);
        p.gamma = cfg.get_double("lab.gamma", p.gamma);
        p.drive_amplitude = cfg.get_double("lab.drive_amplitude", p.drive_amplitude);
        p.omega_F = cfg.get_double("lab.omega_F", p.omega_F);
        p.decay_rate = cfg.get_double("lab.decay_rate", p.decay_rate);
        p.temperature = cfg.get_double("lab.temperature", p.temperature);
        p.hbar = cfg.get_double("lab.hbar", p.hbar);
        p.boltzmann_k = cfg.get_double("lab.boltzmann_k", p.boltzmann_k);
        const DerivedScales s = derive_scales(p);
        out.scaled = scale_params(p, s);
        out.lab = p;
        out.scales = s;
        out.validity = check_validity(p, s);
        cfg.note("scaled.detuning", format_number(out.scaled.detuning));
        cfg.note("scaled.drive", format_number(out.scaled.drive));
        cfg.note("scaled.noise", format_number(out.scaled.noise));
        cfg.note("scaled.planck", format_number(out.scaled.planck));
        cfg.note("scaled.sign_gamma", std::to_string(out.scaled.sign_gamma));
    } else {
        ScaledParams p;
        p.detuning = cfg.get_double("scaled.detuning", fallback.detuning);
        p.drive = cfg.get_double("scaled.drive", fallback.drive);
        p.noise = cfg.get_double("scaled.noise", fallback.noise);
        p.planck = cfg.get_double("scaled.planck", fallback.planck);
        p.sign_gamma = static_cast<int>(cfg.get_int("scaled.sign_gamma", fallback.sign_gamma));
        validate(p);
        out.scaled = p;
    }
    return out;
}

} // namespace paramosc
