#include "wpcn/coop_optimizer.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <string>

#include "wpcn/errors.hpp"

namespace wpcn {

void validate(const SolverConfig& cfg) {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw InvalidFieldError("delta", "delta must lie in (0, 1), got " + std::to_string(cfg.delta));
    if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma))
        throw InvalidFieldError("sigma", "sigma must be positive, got " + std::to_string(cfg.sigma));
    const double needed = std::ceil(std::log2(1.0 / cfg.sigma));
    if (cfg.max_bisect_iters < 1 || cfg.max_bisect_iters < needed)
        throw InvalidFieldError("max_bisect_iters", "max_bisect_iters must be at least ceil(log2(1/sigma)) = " +
                          std::to_string(static_cast<int>(std::max(needed, 1.0))));
}

std::vector<double> line_search_grid(double delta, double wit_budget) {
    std::vector<double> grid;
    if (!(delta > 0.0) || !(wit_budget > 0.0)) return grid;
    for (long k = 1;; ++k) {
        const double t1 = static_cast<double>(k) * delta;
        if (t1 > wit_budget) {
            if (t1 - wit_budget <= 0.5 * delta) grid.push_back(wit_budget);
            break;
        }
        grid.push_back(t1);
        if (t1 == wit_budget) break;
    }
    return grid;
}

namespace {

void check_t0(double t0) {
    if (!(t0 >= 0.0 && t0 < 1.0)) throw DomainError("t0 must lie in [0, 1), got " + std::to_string(t0));
}

}  // namespace

ExchangeSplit bisect_t2(double t1, double t4, const ChannelGains& g, double t0, double sigma, int max_iters) {
    check_t0(t0);
    if (!(t1 >= 0.0) || !(t4 >= 0.0)) throw DomainError("t1 and t4 must be non-negative");
    double span = 1.0 - t0 - t1 - t4;
    if (span < -kFeasibilitySlack)
        throw DomainError("t1 + t4 = " + std::to_string(t1 + t4) + " exceeds 1 - t0 = " + std::to_string(1.0 - t0));
    span = std::max(span, 0.0);

    if (t1 == 0.0 || span == 0.0) return {span / 2.0, span / 2.0, 0.0, 0};

    double lo = 0.0;
    double hi = span;
#ifndef NDEBUG
    double lo_rate = 0.0;
#endif
    ExchangeSplit out;
    for (int iter = 0; iter < max_iters; ++iter) {
        const double t2 = 0.5 * (lo + hi);
        const double t3 = span - t2;
        const double rx = rate_exchange_X(t1, t2, t4, g.rho1);
        const double ry = rate_exchange_Y(t1, t3, t4, g.rho2);
        ++out.evaluations;
        if (std::abs(rx - ry) < sigma || hi - lo < kBracketFloor) {
            out.t2 = t2;
            out.t3 = t3;
            out.rate = std::min(rx, ry);
            return out;
        }
        if (rx > ry) {
            hi = t2;
        } else {
#ifndef NDEBUG
            assert(rx >= lo_rate - 1e-12 && "R_X2 must increase in t2");
            lo_rate = rx;
#endif
            lo = t2;
        }
    }
    throw ConvergenceError("bisection on t2 did not converge within " + std::to_string(max_iters) + " iterations",
                           lo, hi);
}

JointSplit bisect_t4(double t1, const ChannelGains& g, double t0, const SolverConfig& cfg) {
    check_t0(t0);
    if (!(t1 >= 0.0)) throw DomainError("t1 must be non-negative, got " + std::to_string(t1));
    double span = 1.0 - t0 - t1;
    if (span < -kFeasibilitySlack)
        throw DomainError("t1 = " + std::to_string(t1) + " exceeds 1 - t0 = " + std::to_string(1.0 - t0));
    span = std::max(span, 0.0);

    if (span == 0.0) return {};
    if (t1 == 0.0) return {span / 4.0, span / 4.0, span / 2.0, 0.0, 0};

    double lo = 0.0;
    double hi = span;
    JointSplit out;
    for (int iter = 0; iter < cfg.max_bisect_iters; ++iter) {
        const double t4 = 0.5 * (lo + hi);
        const ExchangeSplit inner = bisect_t2(t1, t4, g, t0, cfg.sigma, cfg.max_bisect_iters);
        const double rx2 = rate_exchange_X(t1, inner.t2, t4, g.rho1);
        const double rx4 = rate_joint(t1, inner.t2, inner.t3, t4, g.rho3, g.rho4);
        out.evaluations += inner.evaluations + 1;
        if (std::abs(rx2 - rx4) < cfg.sigma || hi - lo < kBracketFloor) {
            out.t2 = inner.t2;
            out.t3 = inner.t3;
            out.t4 = t4;
            out.rate = std::min(inner.rate, rx4);
            return out;
        }
        if (rx4 > rx2)
            hi = t4;
        else
            lo = t4;
    }
    throw ConvergenceError("bisection on t4 did not converge within " + std::to_string(cfg.max_bisect_iters) +
                               " iterations",
                           lo, hi);
}

namespace {

SolveResult finish(const TimeAllocation& ta, const ChannelGains& g, double t0) {
    SolveResult r;
    r.allocation = ta;
    r.breakdown = breakdown(ta, g, t0);
    r.R_common = r.breakdown.R_common;
    r.residual_exchange = std::abs(r.breakdown.R_X2 - r.breakdown.R_Y3);
    r.residual_joint = std::abs(r.breakdown.R_X2 - r.breakdown.R_X4);
    return r;
}

}  // namespace

SolveResult solve(const ChannelGains& g, double t0, const SolverConfig& cfg) {
    validate(cfg);
    check_t0(t0);
    const double wit_budget = 1.0 - t0;

    std::optional<TimeAllocation> best;
    double best_rate = 0.0;
    std::int64_t evaluations = 0;
    int points = 0;
    int failed = 0;
    std::optional<ConvergenceError> last_error;

    for (const double t1 : line_search_grid(cfg.delta, wit_budget)) {
        ++points;
        try {
            const JointSplit js = bisect_t4(t1, g, t0, cfg);
            evaluations += js.evaluations;
            if (!best || js.rate > best_rate) {
                best = TimeAllocation{t1, js.t2, js.t3, js.t4};
                best_rate = js.rate;
            }
        } catch (const ConvergenceError& e) {
            ++failed;
            last_error = e;
        }
    }
    if (!best) {
        if (last_error) throw *last_error;
        throw DomainError("line search over t1 produced no grid points");
    }

    SolveResult r = finish(*best, g, t0);
    r.evaluations = evaluations;
    r.grid_points = points;
    r.failed_points = failed;
    return r;
}

SolveResult brute_force_oracle(const ChannelGains& g, double t0, double grid_step) {
    check_t0(t0);
    if (!(grid_step > 0.0 && grid_step < 1.0))
        throw DomainError("grid_step must lie in (0, 1), got " + std::to_string(grid_step));
    const double budget = 1.0 - t0;
    const long n = std::max(1L, static_cast<long>(std::ceil(budget / grid_step - 1e-9)));
    const double h = budget / static_cast<double>(n);

    TimeAllocation best{};
    double best_rate = -1.0;
    std::int64_t evaluations = 0;
    for (long i = 0; i <= n; ++i) {
        for (long j = 0; i + j <= n; ++j) {
            for (long k = 0; i + j + k <= n; ++k) {
                const TimeAllocation ta{static_cast<double>(i) * h, static_cast<double>(j) * h,
                                        static_cast<double>(k) * h, static_cast<double>(n - i - j - k) * h};
                const double rate = breakdown(ta, g, t0).R_common;
                ++evaluations;
                if (rate > best_rate) {
                    best_rate = rate;
                    best = ta;
                }
            }
        }
    }
    SolveResult r = finish(best, g, t0);
    r.evaluations = evaluations;
    r.grid_points = static_cast<int>(std::min<std::int64_t>(evaluations, INT32_MAX));
    return r;
}

}  // namespace wpcn
