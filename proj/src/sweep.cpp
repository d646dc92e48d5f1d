#include "wpcn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "wpcn/errors.hpp"

namespace wpcn {

namespace {

constexpr std::string_view kRatioYdXd = "ratio_yd_xd_db";
constexpr std::string_view kRatioExEy = "ratio_ex_ey_db";

bool is_gain_key(std::string_view key) {
    const auto keys = gain_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

bool is_scenario_key(std::string_view key) {
    const auto keys = scenario_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::string unit_for(std::string_view variable) {
    if (variable == kRatioYdXd || variable == kRatioExEy) return "dB";
    if (variable.starts_with("d_")) return "m";
    if (variable == "f_carrier") return "Hz";
    if (variable == "P_t") return "W";
    if (variable == "N0") return "W";
    return "1";
}

}  // namespace

SweepSpec preset_spec(std::string_view name) {
    SweepSpec spec;
    spec.preset = std::string(name);
    spec.points = 21;
    if (name == "fig4") {
        spec.variable = std::string(kRatioYdXd);
        spec.range_start = 0.0;
        spec.range_stop = 10.0;
        spec.overrides.h_YD = kPresetDestinationGain;
        spec.schemes = {SchemeId::Cooperate, SchemeId::NonCooperate, SchemeId::RelayBest};
    } else if (name == "fig5") {
        spec.variable = std::string(kRatioExEy);
        spec.range_start = 0.0;
        spec.range_stop = 10.0;
        spec.overrides.h_EX = kPresetEnergyGain;
        spec.overrides.h_XD = kPresetDestinationGain;
        spec.overrides.h_YD = kPresetDestinationGain;
        spec.schemes = {SchemeId::Cooperate, SchemeId::NonCooperate, SchemeId::RelayBest};
    } else if (name == "fig6") {
        spec.variable = "d_XY";
        spec.range_start = 1.0;
        spec.range_stop = 10.0;
        spec.overrides.h_EX = kPresetEnergyGain;
        spec.overrides.h_EY = kPresetEnergyGain / 4.0;
        spec.overrides.h_XD = kPresetDestinationGain;
        spec.overrides.h_YD = kPresetDestinationGain;
        spec.schemes = {SchemeId::Cooperate, SchemeId::RelayBest};
    } else {
        throw DomainError("unknown preset `" + std::string(name) + "` (expected fig4, fig5 or fig6)");
    }
    spec.unit = unit_for(spec.variable);
    return spec;
}

std::vector<SchemeId> parse_scheme_list(std::string_view list) {
    std::vector<SchemeId> out;
    while (!list.empty()) {
        const auto comma = list.find(',');
        std::string_view item = list.substr(0, comma);
        while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
        while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.remove_suffix(1);
        if (!item.empty()) {
            const SchemeId id = parse_scheme(item);
            if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        }
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    if (out.empty()) throw DomainError("scheme list is empty");
    return out;
}

void validate(const SweepSpec& spec) {
    const bool known = spec.variable == kRatioYdXd || spec.variable == kRatioExEy || is_gain_key(spec.variable) ||
                       is_scenario_key(spec.variable);
    if (!known) throw ConfigError("variable", 0, "unknown swept variable `" + spec.variable + "`");
    if (spec.points < 2) throw ConfigError("points", 0, "need at least 2 sweep points");
    if (!(spec.range_start <= spec.range_stop)) throw ConfigError("range_start", 0, "range must be ordered");
    if (spec.schemes.empty()) throw ConfigError("schemes", 0, "no schemes selected");
}

SweepSpec load_sweep_spec(const KeyValueConfig& cfg) {
    std::vector<std::string_view> allowed{"preset", "variable", "range_start", "range_stop", "points", "schemes"};
    for (auto k : scenario_keys()) allowed.push_back(k);
    for (auto k : gain_keys()) allowed.push_back(k);
    for (auto k : solver_keys()) allowed.push_back(k);
    cfg.require_known(allowed);

    const std::string preset = cfg.contains("preset") ? cfg.text("preset") : "custom";
    SweepSpec spec;
    if (preset == "custom") {
        if (!cfg.contains("variable"))
            throw ConfigError("variable", 0, "custom sweeps must name the swept variable");
        spec.preset = "custom";
        spec.schemes = {SchemeId::Cooperate, SchemeId::NonCooperate, SchemeId::RelayBest};
    } else {
        try {
            spec = preset_spec(preset);
        } catch (const DomainError& e) {
            throw ConfigError("preset", cfg.line_of("preset"), e.what());
        }
        if (cfg.contains("variable"))
            throw ConfigError("variable", cfg.line_of("variable"), "only custom sweeps may set the variable");
    }
    if (cfg.contains("variable")) {
        spec.variable = cfg.text("variable");
        spec.unit = unit_for(spec.variable);
    }
    read_scenario(cfg, spec.scenario);
    read_overrides(cfg, spec.overrides);
    read_solver(cfg, spec.solver);
    if (cfg.contains("range_start")) spec.range_start = cfg.number("range_start");
    if (cfg.contains("range_stop")) spec.range_stop = cfg.number("range_stop");
    if (cfg.contains("points")) {
        const long n = cfg.integer("points");
        if (n < 2 || n > 100000) throw ConfigError("points", cfg.line_of("points"), "must lie in [2, 100000]");
        spec.points = static_cast<int>(n);
    }
    if (cfg.contains("schemes")) {
        try {
            spec.schemes = parse_scheme_list(cfg.text("schemes"));
        } catch (const DomainError& e) {
            throw ConfigError("schemes", cfg.line_of("schemes"), e.what());
        }
    }
    try {
        validate(spec);
    } catch (const ConfigError& e) {
        throw ConfigError(e.key(), cfg.line_of(e.key()), e.what());
    }
    return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) { return load_sweep_spec(KeyValueConfig::load(path)); }

std::vector<double> sweep_values(const SweepSpec& spec) {
    std::vector<double> values(static_cast<std::size_t>(spec.points));
    const double step = (spec.range_stop - spec.range_start) / static_cast<double>(spec.points - 1);
    for (int i = 0; i < spec.points; ++i) values[static_cast<std::size_t>(i)] = spec.range_start + step * i;
    values.back() = spec.range_stop;
    return values;
}

SweepPoint sweep_point(const SweepSpec& spec, double value) {
    Scenario scenario = spec.scenario;
    GainOverrides overrides = spec.overrides;
    if (is_scenario_key(spec.variable)) set_scenario_field(scenario, spec.variable, value);
    if (is_gain_key(spec.variable)) overrides.set(spec.variable, value);
    ChannelGains g = apply_overrides(gains_from_scenario(scenario), overrides);
    if (spec.variable == kRatioYdXd) {
        g.h_XD = g.h_YD / db_to_linear(value);
        g = with_recomputed_rho(g);
    } else if (spec.variable == kRatioExEy) {
        g.h_EY = g.h_EX / db_to_linear(value);
        g = with_recomputed_rho(g);
    }
    return {g, scenario.t0};
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
    validate(spec);
    const std::vector<double> values = sweep_values(spec);
    const std::size_t schemes = spec.schemes.size();
    std::vector<SweepRow> rows(values.size() * schemes);

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            SweepRow& row = rows[i];
            row.swept_value = values[i / schemes];
            row.scheme = spec.schemes[i % schemes];
            try {
                const SweepPoint p = sweep_point(spec, row.swept_value);
                row.result = solve_scheme(row.scheme, p.gains, p.t0, spec.solver);
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
                row.result = BenchmarkResult{};
                row.result.scheme = row.scheme;
            }
        }
    };

    unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(rows.size()));
    if (n <= 1) {
        work();
        return rows;
    }
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    pool.clear();
    return rows;
}

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    out << "variable,unit,swept_value,scheme,status,R_common,R_X,R_Y,t1,t2,t3,t4,chosen_relay,evaluations,residual\n";
    for (const SweepRow& row : rows) {
        const BenchmarkResult& r = row.result;
        out << spec.variable << ',' << spec.unit << ',' << format_number(row.swept_value) << ','
            << to_string(row.scheme) << ',' << (row.ok ? "ok" : "failed") << ',';
        if (row.ok) {
            out << format_number(r.R_common) << ',' << format_number(r.R_X) << ',' << format_number(r.R_Y) << ','
                << format_number(r.allocation.t1) << ',' << format_number(r.allocation.t2) << ','
                << format_number(r.allocation.t3) << ',' << format_number(r.allocation.t4) << ','
                << (r.chosen_relay ? to_string(*r.chosen_relay) : "") << ',' << r.evaluations << ','
                << format_number(r.residual);
        } else {
            out << ",,,,,,,,,";
        }
        out << '\n';
    }
}

int threads_from_env() {
    const char* raw = std::getenv("WPCN_THREADS");
    if (!raw || !*raw) return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 0) return 0;
    return static_cast<int>(std::min(v, 1024L));
}

}  // namespace wpcn
