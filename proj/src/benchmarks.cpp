#include "wpcn/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wpcn/errors.hpp"

namespace wpcn {

std::string_view to_string(SchemeId id) {
    switch (id) {
        case SchemeId::Cooperate: return "cooperate";
        case SchemeId::NonCooperate: return "noncooperate";
        case SchemeId::RelayXtoY: return "relay_xy";
        case SchemeId::RelayYtoX: return "relay_yx";
        case SchemeId::RelayBest: return "relay_best";
    }
    return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
    for (auto id : {SchemeId::Cooperate, SchemeId::NonCooperate, SchemeId::RelayXtoY, SchemeId::RelayYtoX,
                    SchemeId::RelayBest}) {
        if (to_string(id) == name) return id;
    }
    throw DomainError("unknown scheme `" + std::string(name) +
                      "` (expected cooperate, noncooperate, relay_xy, relay_yx or relay_best)");
}

namespace {

// Two consecutive information slots after energy transfer. The first slot's
// rate t2 log2(1 + a t1/t2) grows with t2; the second, w t3 log2(1 + b t1/t3),
// shrinks as t2 takes time from it. Non-cooperative TDMA is (rho3, rho4, 1);
// relaying is (rho_SR, rho_RD, 1/2).
struct TwoSlotModel {
    double first_scale;
    double second_scale;
    double second_weight;

    double first(double t1, double t2) const { return t2 == 0.0 ? 0.0 : slot_rate(t2, first_scale * t1 / t2); }
    double second(double t1, double t3) const {
        return t3 == 0.0 ? 0.0 : second_weight * slot_rate(t3, second_scale * t1 / t3);
    }
};

struct TwoSlotPoint {
    double t2 = 0.0;
    double t3 = 0.0;
    double first = 0.0;
    double second = 0.0;
    double rate = 0.0;
};

TwoSlotPoint bisect_two_slot(const TwoSlotModel& m, double t1, double span, const SolverConfig& cfg,
                             std::int64_t& evaluations) {
    if (t1 == 0.0 || span <= 0.0) {
        const double half = std::max(span, 0.0) / 2.0;
        return {half, half, 0.0, 0.0, 0.0};
    }
    double lo = 0.0;
    double hi = span;
    for (int iter = 0; iter < cfg.max_bisect_iters; ++iter) {
        const double t2 = 0.5 * (lo + hi);
        const double t3 = span - t2;
        const double a = m.first(t1, t2);
        const double b = m.second(t1, t3);
        ++evaluations;
        if (std::abs(a - b) < cfg.sigma || hi - lo < kBracketFloor) return {t2, t3, a, b, std::min(a, b)};
        if (a > b)
            hi = t2;
        else
            lo = t2;
    }
    throw ConvergenceError("two-slot bisection did not converge", lo, hi);
}

TwoSlotPoint solve_two_slot(const TwoSlotModel& m, double t0, const SolverConfig& cfg, double& best_t1,
                            std::int64_t& evaluations) {
    validate(cfg);
    if (!(t0 >= 0.0 && t0 < 1.0)) throw DomainError("t0 must lie in [0, 1), got " + std::to_string(t0));
    const double budget = 1.0 - t0;
    std::optional<TwoSlotPoint> best;
    std::optional<ConvergenceError> last_error;
    for (const double t1 : line_search_grid(cfg.delta, budget)) {
        try {
            const TwoSlotPoint p = bisect_two_slot(m, t1, std::max(budget - t1, 0.0), cfg, evaluations);
            if (!best || p.rate > best->rate) {
                best = p;
                best_t1 = t1;
            }
        } catch (const ConvergenceError& e) {
            last_error = e;
        }
    }
    if (!best) {
        if (last_error) throw *last_error;
        throw DomainError("line search over t1 produced no grid points");
    }
    return *best;
}

TwoSlotModel relay_model(SchemeId direction, const ChannelGains& g) {
    switch (direction) {
        case SchemeId::RelayXtoY: return {g.rho1, g.rho4, 0.5};
        case SchemeId::RelayYtoX: return {g.rho2, g.rho3, 0.5};
        default: throw DomainError("relay direction must be relay_xy or relay_yx");
    }
}

}  // namespace

BenchmarkResult solve_noncoop(const ChannelGains& g, double t0, const SolverConfig& cfg) {
    const TwoSlotModel m{g.rho3, g.rho4, 1.0};
    BenchmarkResult r;
    r.scheme = SchemeId::NonCooperate;
    double t1 = 0.0;
    const TwoSlotPoint p = solve_two_slot(m, t0, cfg, t1, r.evaluations);
    r.allocation = {t1, p.t2, p.t3, 0.0};
    r.R_X = m.first(t1, p.t2);
    r.R_Y = m.second(t1, p.t3);
    r.R_common = std::min(r.R_X, r.R_Y);
    r.residual = std::abs(r.R_X - r.R_Y);
    r.interior = p.t2 > 0.0 && p.t3 > 0.0;
    return r;
}

BenchmarkResult solve_relay(SchemeId direction, const ChannelGains& g, double t0, const SolverConfig& cfg) {
    const TwoSlotModel m = relay_model(direction, g);
    BenchmarkResult r;
    r.scheme = direction;
    r.chosen_relay = direction;
    double t1 = 0.0;
    const TwoSlotPoint p = solve_two_slot(m, t0, cfg, t1, r.evaluations);
    r.allocation = {t1, p.t2, p.t3, 0.0};
    const double source = m.first(t1, p.t2);
    const double half_capacity = m.second(t1, p.t3);
    r.R_common = std::min(source, half_capacity);
    r.R_X = r.R_common;
    r.R_Y = r.R_common;
    r.residual = std::abs(source - half_capacity);
    r.interior = p.t2 > 0.0 && p.t3 > 0.0;
    return r;
}

BenchmarkResult solve_best_relay(const ChannelGains& g, double t0, const SolverConfig& cfg) {
    const BenchmarkResult xy = solve_relay(SchemeId::RelayXtoY, g, t0, cfg);
    const BenchmarkResult yx = solve_relay(SchemeId::RelayYtoX, g, t0, cfg);
    BenchmarkResult r = yx.R_common > xy.R_common ? yx : xy;
    r.scheme = SchemeId::RelayBest;
    r.evaluations = xy.evaluations + yx.evaluations;
    return r;
}

BenchmarkResult solve_scheme(SchemeId scheme, const ChannelGains& g, double t0, const SolverConfig& cfg) {
    switch (scheme) {
        case SchemeId::Cooperate: {
            const SolveResult s = solve(g, t0, cfg);
            BenchmarkResult r;
            r.scheme = SchemeId::Cooperate;
            r.allocation = s.allocation;
            r.R_common = s.R_common;
            r.R_X = s.breakdown.R_X;
            r.R_Y = s.breakdown.R_Y;
            r.residual = std::max(s.residual_exchange, s.residual_joint);
            r.interior = s.allocation.t2 > 0.0 && s.allocation.t3 > 0.0 && s.allocation.t4 > 0.0;
            r.evaluations = s.evaluations;
            return r;
        }
        case SchemeId::NonCooperate: return solve_noncoop(g, t0, cfg);
        case SchemeId::RelayXtoY:
        case SchemeId::RelayYtoX: return solve_relay(scheme, g, t0, cfg);
        case SchemeId::RelayBest: return solve_best_relay(g, t0, cfg);
    }
    throw DomainError("unknown scheme");
}

double scheme_common_rate(SchemeId scheme, const TimeAllocation& ta, const ChannelGains& g, double t0) {
    check_feasible(ta, t0);
    switch (scheme) {
        case SchemeId::Cooperate: return breakdown(ta, g, t0).R_common;
        case SchemeId::NonCooperate: {
            const TwoSlotModel m{g.rho3, g.rho4, 1.0};
            return std::min(m.first(ta.t1, ta.t2), m.second(ta.t1, ta.t3));
        }
        case SchemeId::RelayXtoY:
        case SchemeId::RelayYtoX: {
            const TwoSlotModel m = relay_model(scheme, g);
            return std::min(m.first(ta.t1, ta.t2), m.second(ta.t1, ta.t3));
        }
        case SchemeId::RelayBest: break;
    }
    throw DomainError("scheme_common_rate needs a resolved relay direction, not relay_best");
}

}  // namespace wpcn
