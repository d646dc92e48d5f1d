#pragma once

#include <string_view>

namespace wpcn {

/// Speed of light used by the Friis gain formula (m/s).
inline constexpr double kSpeedOfLight = 3.0e8;

/// Physical two-user setup: one energy node (EN), users X and Y, one
/// destination node (DN). SI units throughout.
struct Scenario {
    double d_EX = 5.0;
    double d_EY = 10.0;
    double d_XY = 2.0;
    double d_XD = 40.0;
    double d_YD = 40.0;
    double f_carrier = 915e6;
    double pathloss_exp = 2.0;
    double antenna_gain = 1.0;
    double P_t = 3.0;
    double eta = 0.5;
    double N0 = 1e-10;
    double t0 = 0.05;

    bool operator==(const Scenario&) const = default;
};

/// Throws DomainError naming the first offending field.
void validate(const Scenario& s);

/// Power gains of the six links plus the SNR-scale constants that every
/// rate expression uses. The link-budget constants (eta, P_t, N0) are kept
/// alongside so rho can be recomputed from the stored gains.
struct ChannelGains {
    double h_EX = 0.0;
    double h_EY = 0.0;
    double h_XY = 0.0;
    double h_YX = 0.0;
    double h_XD = 0.0;
    double h_YD = 0.0;

    double eta = 0.0;
    double P_t = 0.0;
    double N0 = 0.0;

    double rho1 = 0.0;  // X -> Y exchange: eta P_t h_EX h_XY / N0
    double rho2 = 0.0;  // Y -> X exchange: eta P_t h_EY h_YX / N0
    double rho3 = 0.0;  // X -> DN:         eta P_t h_EX h_XD / N0
    double rho4 = 0.0;  // Y -> DN:         eta P_t h_EY h_YD / N0

    bool operator==(const ChannelGains&) const = default;
};

/// SNR-scale constant eta P_t h_E h_link / N0.
double snr_scale(double eta, double P_t, double h_energy, double h_link, double N0);

/// Friis power gain antenna_gain * (c / (4 pi d f))^exp.
double pathloss_gain(double distance, double f_carrier, double pathloss_exp, double antenna_gain = 1.0);

ChannelGains gains_from_scenario(const Scenario& s);

/// Builds gains from explicit link values; h_YX is set to h_XY (reciprocity).
ChannelGains gains_direct(double h_EX, double h_EY, double h_XY, double h_XD, double h_YD,
                          double eta, double P_t, double N0);

/// Returns a copy with rho1..rho4 recomputed from the stored gains.
ChannelGains with_recomputed_rho(ChannelGains g);

/// Power ratio `db` in decibels to linear scale.
double db_to_linear(double db);

}  // namespace wpcn
