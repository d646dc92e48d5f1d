#pragma once

#include "wpcn/channel.hpp"

namespace wpcn {

/// Floating-point slack on the block-time constraint t1+t2+t3+t4 <= 1 - t0.
inline constexpr double kFeasibilitySlack = 1e-9;

/// Block-time fractions (T = 1): t1 energy transfer, t2 X->Y exchange,
/// t3 Y->X exchange, t4 joint Alamouti transmission split evenly between
/// the two users' messages.
struct TimeAllocation {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double t4 = 0.0;

    double sum() const noexcept { return t1 + t2 + t3 + t4; }
    bool operator==(const TimeAllocation&) const = default;
};

/// Throws FeasibilityError naming the violated constraint.
void check_feasible(const TimeAllocation& ta, double t0);

struct RateBreakdown {
    double E_X = 0.0;
    double E_Y = 0.0;
    double P_X = 0.0;
    double P_Y = 0.0;
    double R_X2 = 0.0;
    double R_Y3 = 0.0;
    double R_X4 = 0.0;
    double R_X = 0.0;
    double R_Y = 0.0;
    double R_common = 0.0;

    bool operator==(const RateBreakdown&) const = default;
};

/// duration * log2(1 + snr), exactly 0 for a zero-length slot.
double slot_rate(double duration, double snr);

double harvested_energy(double t1, double P_t, double eta, double h_EU);

/// X -> Y exchange rate in slot 2: t2 log2(1 + rho1 t1 / (t2 + t4)).
double rate_exchange_X(double t1, double t2, double t4, double rho1);

/// Y -> X exchange rate in slot 3: t3 log2(1 + rho2 t1 / (t3 + t4)).
double rate_exchange_Y(double t1, double t3, double t4, double rho2);

/// Joint slot-4 rate, identical for both users:
/// (t4/2) log2(1 + rho3 t1/(t2+t4) + rho4 t1/(t3+t4)).
double rate_joint(double t1, double t2, double t3, double t4, double rho3, double rho4);

/// Partial derivatives of rate_exchange_X in t2 with t1 and t4 held fixed.
/// Requires t2 > 0.
double rate_exchange_X_dt2(double t1, double t2, double t4, double rho1);
double rate_exchange_X_d2t2(double t1, double t2, double t4, double rho1);

RateBreakdown breakdown(const TimeAllocation& ta, const ChannelGains& g, double t0);
RateBreakdown breakdown(const TimeAllocation& ta, const ChannelGains& g, const Scenario& s);

}  // namespace wpcn
