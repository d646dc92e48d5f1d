#include "wpcn/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wpcn/errors.hpp"
#include "wpcn/rates.hpp"

namespace wpcn {

namespace {

double log_uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

double pick_t0(Rng& rng) {
    constexpr double choices[] = {0.0, 0.05, 0.1};
    std::uniform_int_distribution<int> pick(0, 2);
    return choices[pick(rng)];
}

Rng property_rng(std::uint64_t seed, std::uint64_t property) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(property)};
    return Rng(seq);
}

std::vector<std::pair<std::string, double>> describe(const Instance& inst) {
    const ChannelGains& g = inst.gains;
    return {{"h_EX", g.h_EX}, {"h_EY", g.h_EY}, {"h_XY", g.h_XY}, {"h_XD", g.h_XD}, {"h_YD", g.h_YD},
            {"eta", g.eta},   {"P_t", g.P_t},   {"N0", g.N0},     {"t0", inst.t0}};
}

PropertyResult make_property(std::string name, std::string description) {
    PropertyResult p;
    p.name = std::move(name);
    p.description = std::move(description);
    return p;
}

void record_failure(PropertyResult& p, std::vector<std::pair<std::string, double>> instance, std::string detail) {
    ++p.failures;
    p.passed = false;
    if (p.failing_instance.empty()) {
        p.failing_instance = std::move(instance);
        p.failure_detail = std::move(detail);
    }
}

}  // namespace

Instance random_gain_instance(Rng& rng, double lo, double hi) {
    const double h_EX = log_uniform(rng, lo, hi);
    const double h_EY = log_uniform(rng, lo, hi);
    const double h_XY = log_uniform(rng, lo, hi);
    const double h_XD = log_uniform(rng, lo, hi);
    const double h_YD = log_uniform(rng, lo, hi);
    const Scenario defaults;
    Instance inst;
    inst.gains = gains_direct(h_EX, h_EY, h_XY, h_XD, h_YD, defaults.eta, defaults.P_t, defaults.N0);
    inst.t0 = pick_t0(rng);
    return inst;
}

Instance random_scenario_instance(Rng& rng) {
    std::uniform_real_distribution<double> energy(2.0, 15.0);
    std::uniform_real_distribution<double> inter(1.0, 10.0);
    std::uniform_real_distribution<double> dest(20.0, 60.0);
    Scenario s;
    s.d_EX = energy(rng);
    s.d_EY = energy(rng);
    s.d_XY = inter(rng);
    s.d_XD = dest(rng);
    s.d_YD = dest(rng);
    s.t0 = pick_t0(rng);
    return {gains_from_scenario(s), s.t0};
}

std::pair<double, double> random_t1_t4(Rng& rng, double t0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double budget = 1.0 - t0;
    const double t1 = budget * (0.01 + 0.98 * u(rng));
    const double t4 = (budget - t1) * 0.98 * u(rng);
    return {t1, t4};
}

ExchangeMonotonicity sample_exchange_monotonicity(const ChannelGains& g, double t0, double t1, double t4,
                                                  int samples) {
    const double span = 1.0 - t0 - t1 - t4;
    if (!(span > 0.0)) throw DomainError("t1 + t4 leaves no exchange time");
    ExchangeMonotonicity out;
    double prev_x = 0.0;
    double prev_y = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t2 = span * static_cast<double>(i + 1) / static_cast<double>(samples + 1);
        const double x = rate_exchange_X(t1, t2, t4, g.rho1);
        const double y = rate_exchange_Y(t1, span - t2, t4, g.rho2);
        if (i > 0) {
            out.worst_increase_violation = std::max(out.worst_increase_violation, prev_x - x);
            out.worst_decrease_violation = std::max(out.worst_decrease_violation, y - prev_y);
        }
        prev_x = x;
        prev_y = y;
    }
    return out;
}

JointMonotonicity sample_joint_monotonicity(const ChannelGains& g, double t0, double t1, int samples,
                                            double inner_sigma) {
    if (samples < 2) throw DomainError("need at least two t4 samples");
    const double span = 1.0 - t0 - t1;
    if (!(span > 0.0)) throw DomainError("t1 leaves no information time");
    JointMonotonicity out;
    double prev_rx2 = 0.0;
    double prev_rx4 = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t4 = i == samples - 1 ? 1.0 - t0 - t1 : span * static_cast<double>(i) / (samples - 1);
        const ExchangeSplit split = bisect_t2(t1, t4, g, t0, inner_sigma, 400);
        const double rx2 = rate_exchange_X(t1, split.t2, t4, g.rho1);
        const double rx4 = rate_joint(t1, split.t2, split.t3, t4, g.rho3, g.rho4);
        if (i == 0) out.rx4_at_start = rx4;
        if (i == samples - 1) out.rx2_at_end = rx2;
        if (i > 0) {
            out.rx2_violation = std::max(out.rx2_violation, rx2 - prev_rx2);
            out.rx4_violation = std::max(out.rx4_violation, prev_rx4 - rx4);
            out.t2_violation = std::max(out.t2_violation, split.t2 - out.t2.back());
            out.t3_violation = std::max(out.t3_violation, split.t3 - out.t3.back());
        }
        out.t4.push_back(t4);
        out.t2.push_back(split.t2);
        out.t3.push_back(split.t3);
        prev_rx2 = rx2;
        prev_rx4 = rx4;
    }
    return out;
}

DerivativeCheck check_exchange_derivative(double t1, double t2, double t4, double rho1, double step) {
    DerivativeCheck out;
    out.analytic = rate_exchange_X_dt2(t1, t2, t4, rho1);
    out.second = rate_exchange_X_d2t2(t1, t2, t4, rho1);
    const double hi = rate_exchange_X(t1, t2 + step, t4, rho1);
    const double lo = rate_exchange_X(t1, t2 - step, t4, rho1);
    out.finite_difference = (hi - lo) / (2.0 * step);
    out.relative_error = std::abs(out.analytic - out.finite_difference) / std::abs(out.analytic);
    return out;
}

SandwichCheck check_oracle_sandwich(const ChannelGains& g, double t0, const SolverConfig& cfg, double grid_step) {
    SandwichCheck out;
    out.solver = solve(g, t0, cfg).R_common;
    out.oracle = brute_force_oracle(g, t0, grid_step).R_common;
    const double scale = std::max(out.solver, out.oracle);
    out.relative_gap = scale > 0.0 ? std::abs(out.solver - out.oracle) / scale : 0.0;
    return out;
}

bool CheckReport::passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

CheckReport run_checks(std::uint64_t seed, int instances, const CheckOptions& options) {
    if (instances < 1) throw DomainError("need at least one instance");
    CheckReport report;
    report.seed = seed;
    report.instances = instances;

    {
        PropertyResult p = make_property("exchange_monotonicity",
                         "R_X2 increases and R_Y3 decreases in t2 for fixed t1, t4 and t2 + t3");
        Rng rng = property_rng(seed, 1);
        for (int i = 0; i < instances; ++i) {
            const Instance inst = random_gain_instance(rng);
            const auto [t1, t4] = random_t1_t4(rng, inst.t0);
            const auto m = sample_exchange_monotonicity(inst.gains, inst.t0, t1, t4, options.exchange_samples);
            ++p.checked;
            if (!m.holds(options.monotonic_slack)) {
                auto d = describe(inst);
                d.emplace_back("t1", t1);
                d.emplace_back("t4", t4);
                std::ostringstream msg;
                msg << "worst violations: R_X2 " << m.worst_increase_violation << ", R_Y3 "
                    << m.worst_decrease_violation;
                record_failure(p, std::move(d), msg.str());
            }
        }
        report.properties.push_back(std::move(p));
    }

    {
        PropertyResult rates = make_property("joint_monotonicity",
                             "with the exchange split re-solved, R_X2 is non-increasing and R_X4 non-decreasing "
                             "in t4; R_X4 = 0 at t4 = 0 and R_X2 = 0 at t4 = 1 - t0 - t1");
        PropertyResult split = make_property("split_shrinkage", "t2 and t3 of the equal-rate exchange split are both "
                                                "non-increasing in t4");
        Rng rng = property_rng(seed, 2);
        for (int i = 0; i < instances; ++i) {
            const Instance inst = random_gain_instance(rng);
            const double t1 = random_t1_t4(rng, inst.t0).first;
            const auto m = sample_joint_monotonicity(inst.gains, inst.t0, t1, options.joint_samples);
            auto d = describe(inst);
            d.emplace_back("t1", t1);
            ++rates.checked;
            ++split.checked;
            if (!m.rates_hold(options.split_slack) || !m.boundaries_hold()) {
                std::ostringstream msg;
                msg << "R_X2 rise " << m.rx2_violation << ", R_X4 drop " << m.rx4_violation << ", R_X2(end) "
                    << m.rx2_at_end << ", R_X4(0) " << m.rx4_at_start;
                record_failure(rates, d, msg.str());
            }
            if (!m.split_holds(options.split_slack)) {
                std::ostringstream msg;
                msg << "largest rise: t2 " << m.t2_violation << ", t3 " << m.t3_violation;
                record_failure(split, d, msg.str());
            }
        }
        report.properties.push_back(std::move(rates));
        report.properties.push_back(std::move(split));
    }

    {
        PropertyResult p = make_property("exchange_derivative",
                         "analytic dR_X2/dt2 matches a central difference and d2R_X2/dt2^2 < 0");
        Rng rng = property_rng(seed, 3);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < instances; ++i) {
            const Instance inst = random_gain_instance(rng);
            for (int k = 0; k < options.derivative_points; ++k) {
                const auto [t1, t4] = random_t1_t4(rng, inst.t0);
                const double span = 1.0 - inst.t0 - t1 - t4;
                const double t2 = span * (0.01 + 0.98 * u(rng));
                const auto c = check_exchange_derivative(t1, t2, t4, inst.gains.rho1, options.fd_step);
                ++p.checked;
                if (!(c.relative_error <= options.fd_tolerance) || !(c.second < 0.0)) {
                    auto d = describe(inst);
                    d.emplace_back("t1", t1);
                    d.emplace_back("t2", t2);
                    d.emplace_back("t4", t4);
                    std::ostringstream msg;
                    msg << "analytic " << c.analytic << ", finite difference " << c.finite_difference
                        << ", second " << c.second;
                    record_failure(p, std::move(d), msg.str());
                }
            }
        }
        report.properties.push_back(std::move(p));
    }

    {
        PropertyResult p = make_property("equal_rate_residuals", "at the solver optimum |R_X2 - R_Y3| and |R_X2 - R_X4| are "
                                                 "within sigma");
        Rng rng = property_rng(seed, 4);
        for (int i = 0; i < instances; ++i) {
            const Instance inst = random_gain_instance(rng);
            const SolveResult r = solve(inst.gains, inst.t0, options.solver);
            ++p.checked;
            if (!(r.residual_exchange <= options.solver.sigma) || !(r.residual_joint <= options.solver.sigma)) {
                std::ostringstream msg;
                msg << "residuals " << r.residual_exchange << ", " << r.residual_joint;
                record_failure(p, describe(inst), msg.str());
            }
        }
        report.properties.push_back(std::move(p));
    }

    {
        PropertyResult p = make_property("oracle_sandwich", "solver optimum agrees with the exhaustive grid search");
        Rng rng = property_rng(seed, 5);
        for (int i = 0; i < instances; ++i) {
            const Instance inst = random_scenario_instance(rng);
            const auto c = check_oracle_sandwich(inst.gains, inst.t0, options.solver, options.oracle_grid);
            ++p.checked;
            if (!(c.relative_gap <= options.sandwich_tolerance)) {
                std::ostringstream msg;
                msg << "solver " << c.solver << ", oracle " << c.oracle << ", relative gap " << c.relative_gap
                    << (c.solver > c.oracle ? " (solver above the lattice optimum)" : " (solver below the lattice optimum)");
                record_failure(p, describe(inst), msg.str());
            }
        }
        report.properties.push_back(std::move(p));
    }
    return report;
}

}  // namespace wpcn
