#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/coop_optimizer.hpp"

namespace wpcn {

using Rng = std::mt19937_64;

/// Gains log-uniform over [lo, hi] for all five links, default link budget
/// (eta 0.5, P_t 3 W, N0 1e-10 W), t0 drawn from {0, 0.05, 0.1}.
struct Instance {
    ChannelGains gains;
    double t0 = 0.0;
};
Instance random_gain_instance(Rng& rng, double lo = 1e-8, double hi = 1e-3);

/// Physical layouts: EN-user 2..15 m, inter-user 1..10 m, user-DN 20..60 m.
Instance random_scenario_instance(Rng& rng);

/// t1 uniform in (0, 1 - t0), t4 uniform in [0, 1 - t0 - t1).
std::pair<double, double> random_t1_t4(Rng& rng, double t0);

/// Sampling of both exchange rates along t2 in (0, T0) with t2 + t3 = T0.
struct ExchangeMonotonicity {
    double worst_increase_violation = 0.0;  // largest R_X2[i] - R_X2[i+1]
    double worst_decrease_violation = 0.0;  // largest R_Y3[i+1] - R_Y3[i]
    bool holds(double slack) const {
        return worst_increase_violation <= slack && worst_decrease_violation <= slack;
    }
};
ExchangeMonotonicity sample_exchange_monotonicity(const ChannelGains& g, double t0, double t1, double t4,
                                                  int samples);

/// Joint-slot curves with the exchange split re-solved at each t4 sample
/// (t4 = 0 and t4 = 1 - t0 - t1 included). Violations are the largest step
/// against the expected direction.
struct JointMonotonicity {
    double rx2_violation = 0.0;  // R_X2 should not increase
    double rx4_violation = 0.0;  // R_X4 should not decrease
    double t2_violation = 0.0;   // t2 should not increase
    double t3_violation = 0.0;   // t3 should not increase
    double rx2_at_end = 0.0;     // exactly 0 expected at t4 = 1 - t0 - t1
    double rx4_at_start = 0.0;   // exactly 0 expected at t4 = 0
    std::vector<double> t4;
    std::vector<double> t2;
    std::vector<double> t3;

    bool rates_hold(double slack) const { return rx2_violation <= slack && rx4_violation <= slack; }
    bool split_holds(double slack) const { return t2_violation <= slack && t3_violation <= slack; }
    bool boundaries_hold() const { return rx2_at_end == 0.0 && rx4_at_start == 0.0; }
};
/// `inner_sigma` is the equality tolerance of the inner split; pass a tiny
/// value so the bracket floor decides termination.
JointMonotonicity sample_joint_monotonicity(const ChannelGains& g, double t0, double t1, int samples,
                                            double inner_sigma = 1e-15);

struct DerivativeCheck {
    double analytic = 0.0;
    double finite_difference = 0.0;
    double relative_error = 0.0;
    double second = 0.0;
};
DerivativeCheck check_exchange_derivative(double t1, double t2, double t4, double rho1, double step = 1e-6);

struct SandwichCheck {
    double solver = 0.0;
    double oracle = 0.0;
    double relative_gap = 0.0;  // |solver - oracle| / max(solver, oracle)
};
SandwichCheck check_oracle_sandwich(const ChannelGains& g, double t0, const SolverConfig& cfg = {},
                                    double grid_step = 2e-3);

struct PropertyResult {
    std::string name;
    std::string description;
    bool passed = true;
    int checked = 0;
    int failures = 0;
    /// Replay data for the first failing instance: named scalars plus a note.
    std::vector<std::pair<std::string, double>> failing_instance;
    std::string failure_detail;
};

struct CheckOptions {
    int exchange_samples = 100;
    int joint_samples = 50;
    int derivative_points = 20;  // per instance
    double monotonic_slack = 1e-12;
    double split_slack = 1e-9;
    double fd_step = 1e-6;
    double fd_tolerance = 1e-5;
    double sandwich_tolerance = 1e-2;
    double oracle_grid = 2e-3;
    SolverConfig solver;
};

struct CheckReport {
    std::uint64_t seed = 0;
    int instances = 0;
    std::vector<PropertyResult> properties;
    bool passed() const;
};

/// Seeded property validation. Each property draws from its own generator
/// derived from `seed`, so a report is reproducible property by property.
CheckReport run_checks(std::uint64_t seed, int instances, const CheckOptions& options = {});

}  // namespace wpcn
