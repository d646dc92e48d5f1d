#include "wpcn/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wpcn/errors.hpp"

namespace wpcn {

namespace {

void require_time(double t, const char* name) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw DomainError(std::string(name) + " must be a non-negative time fraction, got " + std::to_string(t));
}

}  // namespace

void check_feasible(const TimeAllocation& ta, double t0) {
    const char* names[] = {"t1", "t2", "t3", "t4"};
    const double values[] = {ta.t1, ta.t2, ta.t3, ta.t4};
    for (int i = 0; i < 4; ++i) {
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw FeasibilityError(std::string(names[i]) + ">=0",
                                   std::string(names[i]) + " must be non-negative, got " + std::to_string(values[i]));
    }
    if (!(t0 >= 0.0 && t0 < 1.0))
        throw FeasibilityError("0<=t0<1", "t0 must lie in [0, 1), got " + std::to_string(t0));
    if (ta.sum() > 1.0 - t0 + kFeasibilitySlack)
        throw FeasibilityError("t1+t2+t3+t4<=1-t0",
                               "slot times sum to " + std::to_string(ta.sum()) + " which exceeds 1 - t0 = " +
                                   std::to_string(1.0 - t0));
}

double slot_rate(double duration, double snr) {
    if (duration == 0.0) return 0.0;
    return duration * std::log1p(snr) / std::numbers::ln2;
}

double harvested_energy(double t1, double P_t, double eta, double h_EU) {
    require_time(t1, "t1");
    return eta * t1 * P_t * h_EU;
}

double rate_exchange_X(double t1, double t2, double t4, double rho1) {
    require_time(t1, "t1");
    require_time(t2, "t2");
    require_time(t4, "t4");
    if (t2 == 0.0) return 0.0;
    return slot_rate(t2, rho1 * t1 / (t2 + t4));
}

double rate_exchange_Y(double t1, double t3, double t4, double rho2) {
    require_time(t1, "t1");
    require_time(t3, "t3");
    require_time(t4, "t4");
    if (t3 == 0.0) return 0.0;
    return slot_rate(t3, rho2 * t1 / (t3 + t4));
}

double rate_joint(double t1, double t2, double t3, double t4, double rho3, double rho4) {
    require_time(t1, "t1");
    require_time(t2, "t2");
    require_time(t3, "t3");
    require_time(t4, "t4");
    if (t4 == 0.0) return 0.0;
    return slot_rate(t4 / 2.0, rho3 * t1 / (t2 + t4) + rho4 * t1 / (t3 + t4));
}

// With c1 = rho1 t1, c2 = t4 and c3 = c1 + c2:
//   R   = t2 log2(1 + c1 / (t2 + c2))
//   R'  = log2(1 + c1/(t2 + c2)) - c1 t2 / (ln2 (t2 + c3)(t2 + c2))
//   R'' = -(c1/ln2) ((c2 + c3) t2 + 2 c2 c3) / ((t2 + c3)^2 (t2 + c2)^2)
double rate_exchange_X_dt2(double t1, double t2, double t4, double rho1) {
    require_time(t1, "t1");
    require_time(t4, "t4");
    if (!(t2 > 0.0)) throw DomainError("t2 must be positive for the derivative, got " + std::to_string(t2));
    const double c1 = rho1 * t1;
    const double c2 = t4;
    const double c3 = c1 + c2;
    return std::log1p(c1 / (t2 + c2)) / std::numbers::ln2 - c1 * t2 / (std::numbers::ln2 * (t2 + c3) * (t2 + c2));
}

double rate_exchange_X_d2t2(double t1, double t2, double t4, double rho1) {
    require_time(t1, "t1");
    require_time(t4, "t4");
    if (!(t2 > 0.0)) throw DomainError("t2 must be positive for the derivative, got " + std::to_string(t2));
    const double c1 = rho1 * t1;
    const double c2 = t4;
    const double c3 = c1 + c2;
    const double a = (t2 + c3) * (t2 + c2);
    return -(c1 / std::numbers::ln2) * ((c2 + c3) * t2 + 2.0 * c2 * c3) / (a * a);
}

RateBreakdown breakdown(const TimeAllocation& ta, const ChannelGains& g, double t0) {
    check_feasible(ta, t0);
    RateBreakdown b;
    b.E_X = harvested_energy(ta.t1, g.P_t, g.eta, g.h_EX);
    b.E_Y = harvested_energy(ta.t1, g.P_t, g.eta, g.h_EY);
    const double wit_X = ta.t2 + ta.t4;
    const double wit_Y = ta.t3 + ta.t4;
    b.P_X = wit_X > 0.0 ? b.E_X / wit_X : 0.0;
    b.P_Y = wit_Y > 0.0 ? b.E_Y / wit_Y : 0.0;
    b.R_X2 = rate_exchange_X(ta.t1, ta.t2, ta.t4, g.rho1);
    b.R_Y3 = rate_exchange_Y(ta.t1, ta.t3, ta.t4, g.rho2);
    b.R_X4 = rate_joint(ta.t1, ta.t2, ta.t3, ta.t4, g.rho3, g.rho4);
    b.R_X = std::min(b.R_X2, b.R_X4);
    b.R_Y = std::min(b.R_Y3, b.R_X4);
    b.R_common = std::min(b.R_X, b.R_Y);
    return b;
}

RateBreakdown breakdown(const TimeAllocation& ta, const ChannelGains& g, const Scenario& s) {
    return breakdown(ta, g, s.t0);
}

}  // namespace wpcn
