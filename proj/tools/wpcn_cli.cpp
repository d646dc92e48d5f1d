// wpcn: optimal time allocation for a two-user wireless-powered cooperative
// network, benchmark comparisons and parameter sweeps.
//
//   wpcn solve --config <path> [--json]
//   wpcn sweep (--preset fig4|fig5|fig6 | --spec <path>) --out <path> [--schemes a,b,c]
//   wpcn check --seed <u64> --n <count>
//
// Exit codes: 0 ok, 1 property failure, 2 usage/config error, 3 solver
// failure, 4 I/O error, 5 partial sweep failure.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpcn/benchmarks.hpp"
#include "wpcn/config.hpp"
#include "wpcn/coop_optimizer.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/sweep.hpp"
#include "wpcn/validation.hpp"

namespace {

using nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kUsage = 2, kSolverFailure = 3, kIo = 4, kPartialSweep = 5 };

ordered_json gains_json(const wpcn::ChannelGains& g) {
    return {{"h_EX", g.h_EX}, {"h_EY", g.h_EY}, {"h_XY", g.h_XY}, {"h_YX", g.h_YX}, {"h_XD", g.h_XD},
            {"h_YD", g.h_YD}, {"eta", g.eta},   {"P_t", g.P_t},   {"N0", g.N0},     {"rho1", g.rho1},
            {"rho2", g.rho2}, {"rho3", g.rho3}, {"rho4", g.rho4}};
}

ordered_json binding_json(const wpcn::RateBreakdown& b, double sigma) {
    ordered_json out = ordered_json::array();
    const std::pair<const char*, double> slots[] = {{"R_X2", b.R_X2}, {"R_Y3", b.R_Y3}, {"R_X4", b.R_X4}};
    for (const auto& [name, value] : slots) {
        if (value - b.R_common <= sigma) out.push_back(name);
    }
    return out;
}

int cmd_solve(const std::string& path, bool as_json) {
    wpcn::SolveConfig cfg;
    wpcn::ChannelGains gains;
    try {
        cfg = wpcn::load_solve_config(std::filesystem::path(path));
        gains = cfg.gains();
    } catch (const wpcn::ConfigError& e) {
        std::cerr << "config error: " << path << ": " << e.what() << '\n';
        return kUsage;
    } catch (const wpcn::DomainError& e) {
        std::cerr << "config error: " << path << ": " << e.what() << '\n';
        return kUsage;
    }

    wpcn::SolveResult r;
    try {
        r = wpcn::solve(gains, cfg.scenario.t0, cfg.solver);
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    }

    const auto& a = r.allocation;
    const auto& b = r.breakdown;
    if (as_json) {
        ordered_json out;
        out["gains"] = gains_json(gains);
        out["solver"] = {{"delta", cfg.solver.delta},
                         {"sigma", cfg.solver.sigma},
                         {"max_bisect_iters", cfg.solver.max_bisect_iters}};
        out["allocation"] = {{"t0", cfg.scenario.t0}, {"t1", a.t1},         {"t2", a.t2},
                             {"t3", a.t3},            {"t4", a.t4},         {"t4_X", a.t4 / 2.0},
                             {"t4_Y", a.t4 / 2.0}};
        out["rates"] = {{"E_X", b.E_X},   {"E_Y", b.E_Y},   {"P_X", b.P_X}, {"P_Y", b.P_Y},
                        {"R_X2", b.R_X2}, {"R_Y3", b.R_Y3}, {"R_X4", b.R_X4}, {"R_X", b.R_X},
                        {"R_Y", b.R_Y}};
        out["R_common"] = r.R_common;
        out["residuals"] = {{"exchange", r.residual_exchange}, {"joint", r.residual_joint}};
        out["binding"] = binding_json(b, cfg.solver.sigma);
        out["evaluations"] = r.evaluations;
        out["grid_points"] = r.grid_points;
        out["failed_points"] = r.failed_points;
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "common throughput  " << wpcn::format_number(r.R_common) << '\n'
                  << "allocation         t0=" << cfg.scenario.t0 << " t1=" << a.t1 << " t2=" << a.t2
                  << " t3=" << a.t3 << " t4=" << a.t4 << '\n'
                  << "slot rates         R_X2=" << b.R_X2 << " R_Y3=" << b.R_Y3 << " R_X4=" << b.R_X4 << '\n'
                  << "residuals          exchange=" << r.residual_exchange << " joint=" << r.residual_joint << '\n'
                  << "binding            " << binding_json(b, cfg.solver.sigma).dump() << '\n'
                  << "evaluations        " << r.evaluations << '\n';
    }
    return kOk;
}

int cmd_sweep(const std::string& preset, const std::string& spec_path, const std::string& out_path,
              const std::string& schemes) {
    wpcn::SweepSpec spec;
    try {
        spec = spec_path.empty() ? wpcn::preset_spec(preset) : wpcn::load_sweep_spec(std::filesystem::path(spec_path));
        if (!schemes.empty()) spec.schemes = wpcn::parse_scheme_list(schemes);
        wpcn::validate(spec);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << out_path << '\n';
        return kIo;
    }
    const auto rows = wpcn::run_sweep(spec, wpcn::threads_from_env());
    wpcn::write_csv(out, spec, rows);
    out.close();
    if (!out) {
        std::cerr << "error while writing " << out_path << '\n';
        return kIo;
    }
    int failed = 0;
    for (const auto& row : rows) {
        if (!row.ok) {
            ++failed;
            std::cerr << spec.variable << " = " << row.swept_value << " (" << wpcn::to_string(row.scheme)
                      << ") failed: " << row.error << '\n';
        }
    }
    return failed > 0 ? kPartialSweep : kOk;
}

int cmd_check(std::uint64_t seed, int n, double oracle_step) {
    if (n < 1) {
        std::cerr << "--n must be at least 1\n";
        return kUsage;
    }
    wpcn::CheckOptions options;
    options.oracle_grid = oracle_step;
    const wpcn::CheckReport report = wpcn::run_checks(seed, n, options);

    ordered_json out;
    out["seed"] = report.seed;
    out["instances"] = report.instances;
    out["properties"] = ordered_json::array();
    for (const auto& p : report.properties) {
        ordered_json item{{"name", p.name},       {"description", p.description}, {"passed", p.passed},
                          {"checked", p.checked}, {"failures", p.failures}};
        if (!p.passed) {
            ordered_json inst;
            for (const auto& [k, v] : p.failing_instance) inst[k] = v;
            item["failing_instance"] = inst;
            item["detail"] = p.failure_detail;
        }
        out["properties"].push_back(item);
        std::cerr << (p.passed ? "PASS " : "FAIL ") << p.name << " (" << p.checked - p.failures << '/' << p.checked
                  << ")\n";
    }
    out["passed"] = report.passed();
    std::cout << out.dump(2) << '\n';
    return report.passed() ? kOk : kPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Max-min time allocation for two-user wireless-powered cooperation"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "Solve one instance and print the optimal allocation");
    std::string config_path;
    bool as_json = false;
    solve->add_option("--config", config_path, "key = value scenario file")->required();
    solve->add_flag("--json", as_json, "Emit JSON instead of a text summary");

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep across schemes and write CSV");
    std::string preset;
    std::string spec_path;
    std::string out_path;
    std::string schemes;
    auto* preset_opt =
        sweep->add_option("--preset", preset, "Built-in sweep")->check(CLI::IsMember({"fig4", "fig5", "fig6"}));
    auto* spec_opt = sweep->add_option("--spec", spec_path, "Sweep spec file");
    preset_opt->excludes(spec_opt);
    sweep->add_option("--out", out_path, "Output CSV path")->required();
    sweep->add_option("--schemes", schemes, "Comma-separated: cooperate,noncooperate,relay_xy,relay_yx,relay_best");

    auto* check = app.add_subcommand("check", "Seeded validation of the solver's structural properties");
    std::uint64_t seed = 1;
    int n = 50;
    double oracle_step = 2e-3;
    check->add_option("--seed", seed, "Generator seed")->required();
    check->add_option("--n", n, "Number of random instances")->required();
    check->add_option("--oracle-step", oracle_step, "Grid spacing of the exhaustive oracle")
        ->check(CLI::Range(1e-4, 0.5));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*solve) return cmd_solve(config_path, as_json);
        if (*sweep) {
            if (preset.empty() && spec_path.empty()) {
                std::cerr << "sweep needs --preset or --spec\n";
                return kUsage;
            }
            return cmd_sweep(preset, spec_path, out_path, schemes);
        }
        if (*check) return cmd_check(seed, n, oracle_step);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSolverFailure;
    }
    return kUsage;
}
