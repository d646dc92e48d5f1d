#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpcn/benchmarks.hpp"
#include "wpcn/config.hpp"

namespace wpcn {

/// Published gain constants the presets pin: 5 m EN-X and 40 m user-DN
/// links at 915 MHz.
inline constexpr double kPresetEnergyGain = 2.72e-5;
inline constexpr double kPresetDestinationGain = 4.25e-7;

/// A swept quantity is either a dB ratio that scales the weaker link down
/// from its fixed partner, or any Scenario field / direct gain swept linearly.
struct SweepSpec {
    std::string preset = "custom";
    /// `ratio_yd_xd_db`, `ratio_ex_ey_db`, a Scenario key or a gain key.
    std::string variable;
    std::string unit;
    double range_start = 0.0;
    double range_stop = 0.0;
    int points = 21;
    Scenario scenario;
    GainOverrides overrides;
    SolverConfig solver;
    std::vector<SchemeId> schemes;
};

/// Default setups for `fig4`, `fig5` and `fig6`. Throws DomainError otherwise.
SweepSpec preset_spec(std::string_view name);

/// Loads a sweep spec file: `preset` (fig4 | fig5 | fig6 | custom) plus
/// `range_start`, `range_stop`, `points`, `schemes`, `variable` (custom
/// only) and any solve-config key.
SweepSpec load_sweep_spec(const KeyValueConfig& cfg);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// Throws ConfigError if the spec is malformed.
void validate(const SweepSpec& spec);

/// Comma-separated scheme names.
std::vector<SchemeId> parse_scheme_list(std::string_view list);

std::vector<double> sweep_values(const SweepSpec& spec);

/// Gains and t0 used at one sweep point.
struct SweepPoint {
    ChannelGains gains;
    double t0 = 0.0;
};
SweepPoint sweep_point(const SweepSpec& spec, double value);

struct SweepRow {
    double swept_value = 0.0;
    SchemeId scheme = SchemeId::Cooperate;
    bool ok = true;
    std::string error;
    BenchmarkResult result;
};

/// One row per (point, scheme), point-major. `threads` <= 0 picks
/// std::thread::hardware_concurrency(). Row order does not depend on the
/// number of threads.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 0);

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Thread count from WPCN_THREADS; 0 when unset, empty or 0.
int threads_from_env();

}  // namespace wpcn
