#pragma once

#include <cstdint>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/rates.hpp"

namespace wpcn {

/// Bisection also stops once its bracket is narrower than this, so flat
/// rate curves (t1 close to 0) cannot stall it.
inline constexpr double kBracketFloor = 1e-12;

struct SolverConfig {
    double delta = 1e-3;       // line-search step on t1
    double sigma = 1e-6;       // equality tolerance on rate differences
    int max_bisect_iters = 200;
};

/// t1 values visited by the line search: k * delta for k = 1, 2, ... while
/// k * delta <= wit_budget, plus wit_budget itself when the next grid point
/// overshoots it by at most delta / 2.
std::vector<double> line_search_grid(double delta, double wit_budget);

/// Throws DomainError if a field is out of range or the iteration cap
/// leaves no headroom over ceil(log2(1/sigma)).
void validate(const SolverConfig& cfg);

struct SolveResult {
    TimeAllocation allocation;
    RateBreakdown breakdown;
    double R_common = 0.0;
    double residual_exchange = 0.0;  // |R_X2 - R_Y3|
    double residual_joint = 0.0;     // |R_X2 - R_X4|
    std::int64_t evaluations = 0;
    int grid_points = 0;
    int failed_points = 0;
};

/// Equal-rate split of slots 2/3 for fixed (t1, t4).
struct ExchangeSplit {
    double t2 = 0.0;
    double t3 = 0.0;
    double rate = 0.0;  // min(R_X2, R_Y3) at the split
    std::int64_t evaluations = 0;
};

/// Equal-rate (t2, t3, t4) for fixed t1.
struct JointSplit {
    double t2 = 0.0;
    double t3 = 0.0;
    double t4 = 0.0;
    double rate = 0.0;  // min(R_X2, R_Y3, R_X4)
    std::int64_t evaluations = 0;
};

/// Bisection on t2 in [0, 1 - t0 - t1 - t4] for R_X2 = R_Y3.
ExchangeSplit bisect_t2(double t1, double t4, const ChannelGains& g, double t0, double sigma,
                        int max_iters = SolverConfig{}.max_bisect_iters);

/// Bisection on t4 in [0, 1 - t0 - t1] for R_X2 = R_X4, with the exchange
/// split re-solved at every trial t4.
JointSplit bisect_t4(double t1, const ChannelGains& g, double t0, const SolverConfig& cfg);

/// Line search over t1 in {delta, 2 delta, ...} up to 1 - t0, nested
/// bisections at each point; returns the max-min allocation.
SolveResult solve(const ChannelGains& g, double t0, const SolverConfig& cfg = {});

/// Exhaustive search of the lattice on {t1+t2+t3+t4 = 1 - t0} with spacing
/// at most `grid_step`. Cost grows as (1/grid_step)^3.
SolveResult brute_force_oracle(const ChannelGains& g, double t0, double grid_step = 2e-3);

}  // namespace wpcn
