#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>

#include "smasim/csv.hpp"

using namespace smasim;
using namespace smasim::io;

TEST_CASE("nine-significant-digit formatting") {
    CHECK(format_g9(1.0) == "1");
    CHECK(format_g9(0.0) == "0");
    CHECK(format_g9(-0.0) == "0");  // negative zero normalized
    CHECK(format_g9(0.1390625) == "0.1390625");
    CHECK(format_g9(0.009734375) == "0.009734375");
    CHECK(format_g9(4010.602603996496) == "4010.6026");
    CHECK(format_g9(1e-8) == "1e-08");
    CHECK(format_g9(-273.15) == "-273.15");
    CHECK(format_g9(123456789.0123) == "123456789");
    CHECK(format_g9(12345678901.23) == "1.23456789e+10");
}

TEST_CASE("round9 is idempotent under formatting") {
    for (double x : {0.1390625, 4010.602603996496, 1.0 / 3.0, 293.15, 1e-8, -42.4242424242}) {
        const double r = round9(x);
        CHECK(format_g9(r) == format_g9(x));
        CHECK(round9(r) == r);
    }
}

TEST_CASE("trace CSV for a two-node trace") {
    SimTrace trace;
    trace.ambient_k = 293.15;
    trace.t_s = {0.0, 0.5};
    trace.sma_k = {293.15, 363.15};
    trace.pocket_k = {294.65, 293.65};
    trace.pwm_on = {1, 0};
    trace.q_in_w = {0.1390625, 0.0};

    std::ostringstream os;
    write_trace_csv(os, trace);
    CHECK(os.str() ==
          "t_s,T_sma_C,T_air_C,pwm,on_W\n"
          "0,20,21.5,1,0.1390625\n"
          "0.5,90,20.5,0,0\n");
}

TEST_CASE("trace CSV for a bare trace reports ambient in the air column") {
    SimTrace trace;
    trace.ambient_k = 293.15;
    trace.t_s = {0.0, 1.0};
    trace.sma_k = {293.15, 303.15};
    trace.pwm_on = {1, 1};
    trace.q_in_w = {0.125, 0.125};

    std::ostringstream os;
    write_trace_csv(os, trace);
    CHECK(os.str() ==
          "t_s,T_sma_C,T_air_C,pwm,on_W\n"
          "0,20,20,1,0.125\n"
          "1,30,20,1,0.125\n");
}

TEST_CASE("sweep CSV scales to milliwatts") {
    PowerSummary row;
    row.pwm_frequency_hz = 1.0;
    row.duty_cycle_pct = 7.0;
    row.peak_mean_w = 0.1390625;
    row.avg_mean_w = 0.009734375;
    row.peak_esd_w = 0.0;
    row.avg_esd_w = 0.0012345678901;

    std::ostringstream os;
    write_sweep_csv(os, {row});
    CHECK(os.str() ==
          "f_hz,dc_pct,p_peak_mw,p_avg_mw,p_peak_esd_mw,p_avg_esd_mw\n"
          "1,7,139.0625,9.734375,0,1.23456789\n");
}

TEST_CASE("trajectory CSV round trip") {
    Trajectory2D traj;
    traj.t_s = {0.0, 1.0 / 30.0, 2.0 / 30.0};
    traj.x_mm = {0.0, 0.3966666666, 0.79333333315};
    traj.y_mm = {-1.5, 0.0, 1.5};

    std::ostringstream os;
    write_trajectory_csv(os, traj);

    std::istringstream is(os.str());
    const Trajectory2D back = read_trajectory_csv(is, 40.65);
    REQUIRE(back.t_s.size() == 3);
    CHECK(back.body_length_mm == 40.65);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.t_s[i] == round9(traj.t_s[i]));
        CHECK(back.x_mm[i] == round9(traj.x_mm[i]));
        CHECK(back.y_mm[i] == round9(traj.y_mm[i]));
    }
}

TEST_CASE("trajectory CSV accepts CRLF and blank lines") {
    std::istringstream is("t_s,x_mm,y_mm\r\n0,0,0\r\n\r\n1,2,3\r\n");
    const Trajectory2D traj = read_trajectory_csv(is, 40.65);
    REQUIRE(traj.t_s.size() == 2);
    CHECK(traj.x_mm[1] == 2.0);
    CHECK(traj.y_mm[1] == 3.0);
}

TEST_CASE("trajectory CSV rejects malformed input") {
    {
        std::istringstream is("time,x,y\n0,0,0\n");
        CHECK_THROWS_WITH_AS(read_trajectory_csv(is, 40.65), doctest::Contains("bad header"),
                             std::invalid_argument);
    }
    {
        std::istringstream is("");
        CHECK_THROWS_WITH_AS(read_trajectory_csv(is, 40.65), doctest::Contains("empty input"),
                             std::invalid_argument);
    }
    {
        std::istringstream is("t_s,x_mm,y_mm\n0,0\n");
        CHECK_THROWS_WITH_AS(read_trajectory_csv(is, 40.65),
                             doctest::Contains("expected 3 columns"), std::invalid_argument);
    }
    {
        std::istringstream is("t_s,x_mm,y_mm\n0,0,0\n1,abc,3\n");
        CHECK_THROWS_WITH_AS(read_trajectory_csv(is, 40.65), doctest::Contains("line 3"),
                             std::invalid_argument);
        std::istringstream is2("t_s,x_mm,y_mm\n0,0,0\n1,abc,3\n");
        CHECK_THROWS_WITH_AS(read_trajectory_csv(is2, 40.65),
                             doctest::Contains("is not a number"), std::invalid_argument);
    }
    {
        // Library-level validation still applies after parsing.
        std::istringstream is("t_s,x_mm,y_mm\n1,0,0\n0.5,1,1\n");
        CHECK_THROWS_WITH_AS(read_trajectory_csv(is, 40.65),
                             doctest::Contains("strictly increasing"), std::invalid_argument);
    }
}

TEST_CASE("current CSV round trip carries the sidecar resistance") {
    CurrentTrace trace;
    trace.t_s = {0.0, 0.001, 0.002};
    trace.current_a = {0.0, 0.125, 0.0};
    trace.reference_resistance_ohm = 20.9;

    std::ostringstream os;
    write_current_csv(os, trace);
    CHECK(os.str() == "t_s,i_a\n0,0\n0.001,0.125\n0.002,0\n");

    std::istringstream is(os.str());
    const CurrentTrace back = read_current_csv(is, 20.9);
    CHECK(back.reference_resistance_ohm == 20.9);
    REQUIRE(back.current_a.size() == 3);
    CHECK(back.current_a[1] == 0.125);

    std::istringstream bad("t_s,i_a\n0,0\n");
    CHECK_THROWS_AS(read_current_csv(bad, -1.0), std::invalid_argument);
}
