#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "wpcn/channel.hpp"
#include "wpcn/coop_optimizer.hpp"
#include "wpcn/rates.hpp"

namespace wpcn {

/// RelayXtoY is X -> Y -> DN (Y relays), RelayYtoX is Y -> X -> DN (X relays).
enum class SchemeId { Cooperate, NonCooperate, RelayXtoY, RelayYtoX, RelayBest };

std::string_view to_string(SchemeId id);
/// Accepts the names produced by to_string. Throws DomainError otherwise.
SchemeId parse_scheme(std::string_view name);

struct BenchmarkResult {
    SchemeId scheme = SchemeId::NonCooperate;
    /// t1 energy transfer, t2/t3 the two information slots; t4 unused (0).
    TimeAllocation allocation;
    double R_common = 0.0;
    double R_X = 0.0;
    double R_Y = 0.0;
    std::optional<SchemeId> chosen_relay;
    /// |R_X - R_Y| for NonCooperate, |R_S2 - C3/2| for relaying.
    double residual = 0.0;
    /// Both information slots non-empty at the optimum. When false, one
    /// constraint binds strictly and the residual need not be below sigma.
    bool interior = true;
    std::int64_t evaluations = 0;
};

/// TDMA without cooperation: X then Y transmit directly to the DN, each
/// spending all of its harvested energy in its own slot.
BenchmarkResult solve_noncoop(const ChannelGains& g, double t0, const SolverConfig& cfg = {});

/// Decode-and-forward relaying in one direction. The relay time-shares its
/// slot-3 capacity C3 between forwarded and own bits, so the common rate for
/// fixed times is min(R_S2, C3 / 2).
BenchmarkResult solve_relay(SchemeId direction, const ChannelGains& g, double t0, const SolverConfig& cfg = {});

/// Better of the two relay directions; exact ties go to RelayXtoY.
BenchmarkResult solve_best_relay(const ChannelGains& g, double t0, const SolverConfig& cfg = {});

/// Dispatches to solve / solve_noncoop / solve_relay / solve_best_relay and
/// packages the cooperative result in the same shape.
BenchmarkResult solve_scheme(SchemeId scheme, const ChannelGains& g, double t0, const SolverConfig& cfg = {});

/// Common rate of `scheme` at a given allocation. RelayBest is not accepted:
/// pass the resolved direction.
double scheme_common_rate(SchemeId scheme, const TimeAllocation& ta, const ChannelGains& g, double t0);

}  // namespace wpcn
