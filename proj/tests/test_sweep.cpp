#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "wpcn/errors.hpp"
#include "wpcn/sweep.hpp"

using namespace wpcn;

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) rows.push_back(split(line));
    return rows;
}

std::string to_csv(const SweepSpec& spec, int threads) {
    std::ostringstream out;
    write_csv(out, spec, run_sweep(spec, threads));
    return out.str();
}

SweepSpec small_spec() {
    SweepSpec s = preset_spec("fig4");
    s.points = 4;
    s.schemes = {SchemeId::Cooperate, SchemeId::NonCooperate, SchemeId::RelayXtoY, SchemeId::RelayBest};
    return s;
}

}  // namespace

TEST(Presets, PublishedConstants) {
    for (const char* name : {"fig4", "fig5", "fig6"}) {
        const auto s = preset_spec(name);
        EXPECT_EQ(s.preset, name);
        EXPECT_EQ(s.points, 21);
        EXPECT_EQ(s.scenario.P_t, 3.0);
        EXPECT_EQ(s.scenario.d_EX, 5.0);
        EXPECT_EQ(s.scenario.d_EY, 10.0);
        EXPECT_EQ(s.scenario.d_XY, 2.0);
        EXPECT_EQ(s.scenario.f_carrier, 915e6);
        EXPECT_EQ(s.scenario.pathloss_exp, 2.0);
    }
    const auto f4 = preset_spec("fig4");
    EXPECT_EQ(f4.variable, "ratio_yd_xd_db");
    EXPECT_EQ(f4.overrides.h_YD, 4.25e-7);
    EXPECT_EQ(f4.range_start, 0.0);
    EXPECT_EQ(f4.range_stop, 10.0);

    const auto f5 = preset_spec("fig5");
    EXPECT_EQ(f5.variable, "ratio_ex_ey_db");
    EXPECT_EQ(f5.overrides.h_EX, 2.72e-5);
    EXPECT_EQ(f5.overrides.h_XD, 4.25e-7);
    EXPECT_EQ(f5.overrides.h_YD, 4.25e-7);

    const auto f6 = preset_spec("fig6");
    EXPECT_EQ(f6.variable, "d_XY");
    EXPECT_EQ(f6.unit, "m");
    EXPECT_EQ(f6.range_start, 1.0);
    EXPECT_EQ(f6.range_stop, 10.0);
    EXPECT_EQ(f6.overrides.h_EX, 2.72e-5);
    EXPECT_EQ(f6.overrides.h_EY, 2.72e-5 / 4);
    EXPECT_EQ(f6.overrides.h_XD, f6.overrides.h_YD);
    EXPECT_EQ(f6.schemes, (std::vector<SchemeId>{SchemeId::Cooperate, SchemeId::RelayBest}));

    EXPECT_THROW(preset_spec("fig7"), DomainError);
}

TEST(Presets, RatioScalesTheWeakerGainDown) {
    const auto f4 = sweep_point(preset_spec("fig4"), 6.0);
    EXPECT_EQ(f4.gains.h_YD, 4.25e-7);
    EXPECT_NEAR(f4.gains.h_XD, 4.25e-7 * std::pow(10.0, -0.6), 1e-22);

    const auto f5 = sweep_point(preset_spec("fig5"), 3.0);
    EXPECT_EQ(f5.gains.h_EX, 2.72e-5);
    EXPECT_NEAR(f5.gains.h_EY, 2.72e-5 * std::pow(10.0, -0.3), 1e-20);

    const auto at0 = sweep_point(preset_spec("fig5"), 0.0);
    EXPECT_EQ(at0.gains.h_EY, at0.gains.h_EX);
    EXPECT_EQ(at0.gains, with_recomputed_rho(at0.gains));

    const auto f6 = sweep_point(preset_spec("fig6"), 7.0);
    EXPECT_EQ(f6.gains.h_XY, pathloss_gain(7.0, 915e6, 2.0));
    EXPECT_EQ(f6.gains.h_YX, f6.gains.h_XY);
    EXPECT_EQ(f6.t0, Scenario{}.t0);
}

TEST(SweepValues, EvenlySpacedWithExactEndpoints) {
    const auto v = sweep_values(preset_spec("fig6"));
    ASSERT_EQ(v.size(), 21u);
    EXPECT_EQ(v.front(), 1.0);
    EXPECT_EQ(v.back(), 10.0);
    EXPECT_NEAR(v[1] - v[0], 0.45, 1e-15);
}

TEST(SweepSpecFile, PresetWithOverrides) {
    const auto s = load_sweep_spec(KeyValueConfig::parse("preset = fig5\npoints = 6\nt0 = 0.1\nschemes = cooperate\n"));
    EXPECT_EQ(s.points, 6);
    EXPECT_EQ(s.scenario.t0, 0.1);
    EXPECT_EQ(s.overrides.h_EX, 2.72e-5);
    EXPECT_EQ(s.schemes, std::vector<SchemeId>{SchemeId::Cooperate});
}

TEST(SweepSpecFile, CustomVariable) {
    const auto s = load_sweep_spec(
        KeyValueConfig::parse("preset = custom\nvariable = d_XD\nrange_start = 20\nrange_stop = 60\npoints = 5\n"));
    EXPECT_EQ(s.variable, "d_XD");
    EXPECT_EQ(s.unit, "m");
    EXPECT_EQ(sweep_point(s, 30.0).gains.h_XD, pathloss_gain(30.0, 915e6, 2.0));
}

TEST(SweepSpecFile, Rejections) {
    for (const char* text : {"preset = fig9\n", "preset = custom\n", "preset = fig4\nvariable = d_XY\n",
                             "preset = fig4\npoints = 1\n", "preset = fig4\nschemes = coop\n",
                             "preset = fig4\nrange_start = 5\nrange_stop = 1\n", "preset = fig4\nwhat = 1\n",
                             "preset = custom\nvariable = colour\n", "preset = fig4\neta = 0\n"}) {
        EXPECT_THROW(load_sweep_spec(KeyValueConfig::parse(text)), ConfigError) << text;
    }
    try {
        load_sweep_spec(KeyValueConfig::parse("preset = fig4\n\nschemes = cooperate,bogus\n"));
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_EQ(e.key(), "schemes");
    }
}

TEST(SchemeList, ParsesAndRejects) {
    EXPECT_EQ(parse_scheme_list("cooperate, relay_best"),
              (std::vector<SchemeId>{SchemeId::Cooperate, SchemeId::RelayBest}));
    EXPECT_THROW(parse_scheme_list(""), DomainError);
    EXPECT_THROW(parse_scheme_list(" , "), DomainError);
    EXPECT_THROW(parse_scheme_list("cooperate,relay"), DomainError);
    EXPECT_EQ(parse_scheme_list("cooperate,,cooperate"), std::vector<SchemeId>{SchemeId::Cooperate});
}

TEST(RunSweep, RowOrderIsPointMajor) {
    const auto spec = small_spec();
    const auto rows = run_sweep(spec, 2);
    const auto values = sweep_values(spec);
    ASSERT_EQ(rows.size(), values.size() * spec.schemes.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].swept_value, values[i / spec.schemes.size()]);
        EXPECT_EQ(rows[i].scheme, spec.schemes[i % spec.schemes.size()]);
        EXPECT_TRUE(rows[i].ok);
        EXPECT_GE(rows[i].result.R_common, 0.0);
    }
}

TEST(RunSweep, CsvIndependentOfThreadCount) {
    const auto spec = small_spec();
    const std::string one = to_csv(spec, 1);
    EXPECT_EQ(one, to_csv(spec, 3));
    EXPECT_EQ(one, to_csv(spec, 8));
}

TEST(RunSweep, CsvRoundTripsThroughLibrary) {
    const auto spec = small_spec();
    const auto rows = csv_rows(to_csv(spec, 0));
    const std::vector<std::string> header{"variable", "unit", "swept_value", "scheme", "status", "R_common", "R_X",
                                          "R_Y", "t1", "t2", "t3", "t4", "chosen_relay", "evaluations", "residual"};
    ASSERT_EQ(rows.front(), header);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        ASSERT_EQ(r.size(), header.size());
        EXPECT_EQ(r[0], "ratio_yd_xd_db");
        EXPECT_EQ(r[1], "dB");
        EXPECT_EQ(r[4], "ok");
        const SchemeId id = parse_scheme(r[3]);
        const SchemeId resolved = id == SchemeId::RelayBest ? parse_scheme(r[12]) : id;
        const bool relay = id == SchemeId::RelayXtoY || id == SchemeId::RelayYtoX || id == SchemeId::RelayBest;
        EXPECT_EQ(r[12].empty(), !relay);
        const auto point = sweep_point(spec, std::stod(r[2]));
        const TimeAllocation ta{std::stod(r[8]), std::stod(r[9]), std::stod(r[10]), std::stod(r[11])};
        EXPECT_NEAR(scheme_common_rate(resolved, ta, point.gains, point.t0), std::stod(r[5]), 1e-9) << i;
    }
}

TEST(RunSweep, FailedPointsKeepTheirRow) {
    SweepSpec spec;
    spec.variable = "t0";
    spec.range_start = 0.5;
    spec.range_stop = 1.0;
    spec.points = 3;
    spec.schemes = {SchemeId::Cooperate, SchemeId::NonCooperate};
    const auto rows = run_sweep(spec, 2);
    ASSERT_EQ(rows.size(), 6u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(rows[i].ok);
    EXPECT_FALSE(rows[4].ok);
    EXPECT_FALSE(rows[5].ok);
    EXPECT_NE(rows[4].error.find("t0"), std::string::npos);

    std::ostringstream out;
    write_csv(out, spec, rows);
    const auto csv = csv_rows(out.str());
    ASSERT_EQ(csv.size(), 7u);
    EXPECT_EQ(csv[5][4], "failed");
    for (std::size_t k = 5; k < csv[5].size(); ++k) EXPECT_TRUE(csv[5][k].empty());
}

TEST(RunSweep, ParityFavoursNonCooperation) {
    SweepSpec spec = preset_spec("fig5");
    spec.range_stop = 10.0;
    spec.points = 2;
    const auto rows = run_sweep(spec, 1);
    // Rows: {0 dB, 10 dB} x {cooperate, noncooperate, relay_best}.
    EXPECT_GE(rows[1].result.R_common, rows[0].result.R_common);
    EXPECT_GT(rows[3].result.R_common, rows[4].result.R_common);
}

TEST(Threads, ReadFromEnvironment) {
    ::unsetenv("WPCN_THREADS");
    EXPECT_EQ(threads_from_env(), 0);
    ::setenv("WPCN_THREADS", "3", 1);
    EXPECT_EQ(threads_from_env(), 3);
    ::setenv("WPCN_THREADS", "", 1);
    EXPECT_EQ(threads_from_env(), 0);
    ::unsetenv("WPCN_THREADS");
}
