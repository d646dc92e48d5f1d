#include "wpcn/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "wpcn/errors.hpp"

namespace wpcn {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

struct ScenarioField {
    std::string_view name;
    double Scenario::*member;
};

constexpr std::array<ScenarioField, 12> kScenarioFields{{
    {"d_EX", &Scenario::d_EX},
    {"d_EY", &Scenario::d_EY},
    {"d_XY", &Scenario::d_XY},
    {"d_XD", &Scenario::d_XD},
    {"d_YD", &Scenario::d_YD},
    {"f_carrier", &Scenario::f_carrier},
    {"pathloss_exp", &Scenario::pathloss_exp},
    {"antenna_gain", &Scenario::antenna_gain},
    {"P_t", &Scenario::P_t},
    {"eta", &Scenario::eta},
    {"N0", &Scenario::N0},
    {"t0", &Scenario::t0},
}};

constexpr std::array<std::string_view, 12> kScenarioKeys{
    "d_EX", "d_EY", "d_XY", "d_XD", "d_YD", "f_carrier", "pathloss_exp", "antenna_gain", "P_t", "eta", "N0", "t0"};
constexpr std::array<std::string_view, 5> kGainKeys{"h_EX", "h_EY", "h_XY", "h_XD", "h_YD"};
constexpr std::array<std::string_view, 3> kSolverKeys{"delta", "sigma", "max_bisect_iters"};

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
    KeyValueConfig cfg;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected `key = value`");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("", line_no, "missing key before `=`");
        if (value.empty()) throw ConfigError(key, line_no, "missing value");
        if (const auto it = cfg.entries_.find(key); it != cfg.entries_.end())
            throw ConfigError(key, line_no, "duplicate key (first set on line " + std::to_string(it->second.line) + ")");
        cfg.entries_.emplace(key, Entry{value, line_no});
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot read config file " + path.string());
    return parse(in);
}

bool KeyValueConfig::contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

const KeyValueConfig::Entry* KeyValueConfig::find(std::string_view key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

const KeyValueConfig::Entry& KeyValueConfig::at(std::string_view key) const {
    const Entry* e = find(key);
    if (!e) throw ConfigError(std::string(key), 0, "required key is missing");
    return *e;
}

double KeyValueConfig::number(std::string_view key) const {
    const Entry& e = at(key);
    double value = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError(std::string(key), e.line, "expected a number, got `" + e.value + "`");
    return value;
}

long KeyValueConfig::integer(std::string_view key) const {
    const Entry& e = at(key);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), value);
    if (ec != std::errc{} || ptr != e.value.data() + e.value.size())
        throw ConfigError(std::string(key), e.line, "expected an integer, got `" + e.value + "`");
    return value;
}

const std::string& KeyValueConfig::text(std::string_view key) const { return at(key).value; }

int KeyValueConfig::line_of(std::string_view key) const {
    const Entry* e = find(key);
    return e ? e->line : 0;
}

void KeyValueConfig::require_known(std::span<const std::string_view> allowed) const {
    for (const auto& [key, entry] : entries_) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(key, entry.line, "unknown key");
    }
}

std::span<const std::string_view> scenario_keys() { return kScenarioKeys; }
std::span<const std::string_view> gain_keys() { return kGainKeys; }
std::span<const std::string_view> solver_keys() { return kSolverKeys; }

bool set_scenario_field(Scenario& s, std::string_view key, double value) {
    for (const auto& f : kScenarioFields) {
        if (f.name == key) {
            s.*(f.member) = value;
            return true;
        }
    }
    return false;
}

std::optional<double> scenario_field(const Scenario& s, std::string_view key) {
    for (const auto& f : kScenarioFields) {
        if (f.name == key) return s.*(f.member);
    }
    return std::nullopt;
}

bool GainOverrides::set(std::string_view key, double value) {
    if (key == "h_EX") h_EX = value;
    else if (key == "h_EY") h_EY = value;
    else if (key == "h_XY") h_XY = value;
    else if (key == "h_XD") h_XD = value;
    else if (key == "h_YD") h_YD = value;
    else return false;
    return true;
}

ChannelGains apply_overrides(ChannelGains g, const GainOverrides& o) {
    const auto take = [](double& slot, const std::optional<double>& v, const char* name) {
        if (!v) return;
        if (!(*v > 0.0) || !std::isfinite(*v))
            throw InvalidFieldError(name, std::string(name) + " must be a positive finite gain");
        slot = *v;
    };
    take(g.h_EX, o.h_EX, "h_EX");
    take(g.h_EY, o.h_EY, "h_EY");
    take(g.h_XY, o.h_XY, "h_XY");
    take(g.h_XD, o.h_XD, "h_XD");
    take(g.h_YD, o.h_YD, "h_YD");
    g.h_YX = g.h_XY;
    return with_recomputed_rho(g);
}

ChannelGains SolveConfig::gains() const { return apply_overrides(gains_from_scenario(scenario), overrides); }

void read_scenario(const KeyValueConfig& cfg, Scenario& s) {
    for (const auto key : kScenarioKeys) {
        if (cfg.contains(key)) set_scenario_field(s, key, cfg.number(key));
    }
    try {
        validate(s);
    } catch (const InvalidFieldError& e) {
        throw ConfigError(e.field(), cfg.line_of(e.field()), e.what());
    }
}

void read_overrides(const KeyValueConfig& cfg, GainOverrides& o) {
    for (const auto key : kGainKeys) {
        if (!cfg.contains(key)) continue;
        const double v = cfg.number(key);
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError(std::string(key), cfg.line_of(key), "must be a positive finite gain");
        o.set(key, v);
    }
}

void read_solver(const KeyValueConfig& cfg, SolverConfig& c) {
    if (cfg.contains("delta")) c.delta = cfg.number("delta");
    if (cfg.contains("sigma")) c.sigma = cfg.number("sigma");
    if (cfg.contains("max_bisect_iters")) {
        const long iters = cfg.integer("max_bisect_iters");
        if (iters < 1 || iters > 100000)
            throw ConfigError("max_bisect_iters", cfg.line_of("max_bisect_iters"), "must lie in [1, 100000]");
        c.max_bisect_iters = static_cast<int>(iters);
    }
    try {
        validate(c);
    } catch (const InvalidFieldError& e) {
        throw ConfigError(e.field(), cfg.line_of(e.field()), e.what());
    }
}

SolveConfig load_solve_config(const KeyValueConfig& cfg) {
    std::vector<std::string_view> allowed(kScenarioKeys.begin(), kScenarioKeys.end());
    allowed.insert(allowed.end(), kGainKeys.begin(), kGainKeys.end());
    allowed.insert(allowed.end(), kSolverKeys.begin(), kSolverKeys.end());
    cfg.require_known(allowed);
    SolveConfig out;
    read_scenario(cfg, out.scenario);
    read_overrides(cfg, out.overrides);
    read_solver(cfg, out.solver);
    return out;
}

SolveConfig load_solve_config(const std::filesystem::path& path) { return load_solve_config(KeyValueConfig::load(path)); }

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

}  // namespace wpcn
