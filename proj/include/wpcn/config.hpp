#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "wpcn/channel.hpp"
#include "wpcn/coop_optimizer.hpp"

namespace wpcn {

/// Flat `key = value` file: one pair per line, `#` starts a comment,
/// blank lines ignored, duplicate keys rejected.
class KeyValueConfig {
public:
    struct Entry {
        std::string value;
        int line = 0;
    };

    static KeyValueConfig parse(std::istream& in);
    static KeyValueConfig parse(std::string_view text);
    static KeyValueConfig load(const std::filesystem::path& path);

    bool contains(std::string_view key) const;
    const Entry* find(std::string_view key) const;
    const std::map<std::string, Entry, std::less<>>& entries() const noexcept { return entries_; }

    /// Locale-independent parse of a floating-point value.
    double number(std::string_view key) const;
    long integer(std::string_view key) const;
    const std::string& text(std::string_view key) const;
    int line_of(std::string_view key) const;

    /// Throws ConfigError on the first key not in `allowed`.
    void require_known(std::span<const std::string_view> allowed) const;

private:
    const Entry& at(std::string_view key) const;

    std::map<std::string, Entry, std::less<>> entries_;
};

/// Names of every Scenario field, in declaration order.
std::span<const std::string_view> scenario_keys();
/// h_EX, h_EY, h_XY, h_XD, h_YD.
std::span<const std::string_view> gain_keys();
/// delta, sigma, max_bisect_iters.
std::span<const std::string_view> solver_keys();

/// Returns false if `key` is not a Scenario field.
bool set_scenario_field(Scenario& s, std::string_view key, double value);
std::optional<double> scenario_field(const Scenario& s, std::string_view key);

/// Link gains pinned directly instead of derived from distances.
struct GainOverrides {
    std::optional<double> h_EX;
    std::optional<double> h_EY;
    std::optional<double> h_XY;
    std::optional<double> h_XD;
    std::optional<double> h_YD;

    bool set(std::string_view key, double value);
    bool operator==(const GainOverrides&) const = default;
};

/// Applies overrides (h_YX follows h_XY) and recomputes rho1..rho4.
ChannelGains apply_overrides(ChannelGains g, const GainOverrides& o);

struct SolveConfig {
    Scenario scenario;
    GainOverrides overrides;
    SolverConfig solver;

    ChannelGains gains() const;
};

/// Reads scenario, gain-override and solver keys from `cfg`, leaving the
/// rest untouched. Invalid values raise ConfigError carrying the line and key.
void read_scenario(const KeyValueConfig& cfg, Scenario& s);
void read_overrides(const KeyValueConfig& cfg, GainOverrides& o);
void read_solver(const KeyValueConfig& cfg, SolverConfig& c);

SolveConfig load_solve_config(const KeyValueConfig& cfg);
SolveConfig load_solve_config(const std::filesystem::path& path);

/// Shortest round-trip decimal text, `.` separator regardless of locale.
std::string format_number(double value);

}  // namespace wpcn
