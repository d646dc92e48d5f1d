#include "wpcn/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wpcn/errors.hpp"

namespace wpcn {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw InvalidFieldError(name,
                                std::string(name) + " must be a positive finite number, got " + std::to_string(value));
}

}  // namespace

void validate(const Scenario& s) {
    require_positive(s.d_EX, "d_EX");
    require_positive(s.d_EY, "d_EY");
    require_positive(s.d_XY, "d_XY");
    require_positive(s.d_XD, "d_XD");
    require_positive(s.d_YD, "d_YD");
    require_positive(s.f_carrier, "f_carrier");
    if (!(s.pathloss_exp >= 2.0) || !std::isfinite(s.pathloss_exp))
        throw InvalidFieldError("pathloss_exp", "pathloss_exp must be >= 2, got " + std::to_string(s.pathloss_exp));
    require_positive(s.antenna_gain, "antenna_gain");
    require_positive(s.P_t, "P_t");
    if (!(s.eta > 0.0 && s.eta < 1.0))
        throw InvalidFieldError("eta", "eta must lie in (0, 1), got " + std::to_string(s.eta));
    require_positive(s.N0, "N0");
    if (!(s.t0 >= 0.0 && s.t0 < 1.0))
        throw InvalidFieldError("t0", "t0 must lie in [0, 1), got " + std::to_string(s.t0));
}

double snr_scale(double eta, double P_t, double h_energy, double h_link, double N0) {
    return eta * P_t * h_energy * h_link / N0;
}

double pathloss_gain(double distance, double f_carrier, double pathloss_exp, double antenna_gain) {
    require_positive(distance, "distance");
    require_positive(f_carrier, "f_carrier");
    const double base = kSpeedOfLight / (4.0 * std::numbers::pi * distance * f_carrier);
    return antenna_gain * std::pow(base, pathloss_exp);
}

ChannelGains with_recomputed_rho(ChannelGains g) {
    g.rho1 = snr_scale(g.eta, g.P_t, g.h_EX, g.h_XY, g.N0);
    g.rho2 = snr_scale(g.eta, g.P_t, g.h_EY, g.h_YX, g.N0);
    g.rho3 = snr_scale(g.eta, g.P_t, g.h_EX, g.h_XD, g.N0);
    g.rho4 = snr_scale(g.eta, g.P_t, g.h_EY, g.h_YD, g.N0);
    return g;
}

ChannelGains gains_from_scenario(const Scenario& s) {
    validate(s);
    const auto gain = [&](double d) { return pathloss_gain(d, s.f_carrier, s.pathloss_exp, s.antenna_gain); };
    ChannelGains g;
    g.h_EX = gain(s.d_EX);
    g.h_EY = gain(s.d_EY);
    g.h_XY = gain(s.d_XY);
    g.h_YX = g.h_XY;
    g.h_XD = gain(s.d_XD);
    g.h_YD = gain(s.d_YD);
    g.eta = s.eta;
    g.P_t = s.P_t;
    g.N0 = s.N0;
    return with_recomputed_rho(g);
}

ChannelGains gains_direct(double h_EX, double h_EY, double h_XY, double h_XD, double h_YD,
                          double eta, double P_t, double N0) {
    require_positive(h_EX, "h_EX");
    require_positive(h_EY, "h_EY");
    require_positive(h_XY, "h_XY");
    require_positive(h_XD, "h_XD");
    require_positive(h_YD, "h_YD");
    if (!(eta > 0.0 && eta < 1.0))
        throw InvalidFieldError("eta", "eta must lie in (0, 1), got " + std::to_string(eta));
    require_positive(P_t, "P_t");
    require_positive(N0, "N0");
    ChannelGains g;
    g.h_EX = h_EX;
    g.h_EY = h_EY;
    g.h_XY = h_XY;
    g.h_YX = h_XY;
    g.h_XD = h_XD;
    g.h_YD = h_YD;
    g.eta = eta;
    g.P_t = P_t;
    g.N0 = N0;
    return with_recomputed_rho(g);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace wpcn
