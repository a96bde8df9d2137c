#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "skyshare/channel.hpp"

using namespace skyshare;

TEST_CASE("LoS probability matches hand-evaluated points") {
    LosModel los;  // B = 0.136, C = 11.95
    CHECK(los.probability(11.95) == Catch::Approx(1.0 / 12.95).epsilon(1e-9));
    CHECK(los.probability(90.0) == Catch::Approx(0.99971).margin(5e-6));
    CHECK(los.probability(45.0) == Catch::Approx(0.8822663).margin(5e-7));
}

TEST_CASE("LoS probability is increasing and stays inside (0,1)") {
    LosModel los;
    double prev = 0.0;
    for (int deg = 0; deg <= 90; ++deg) {
        const double p = los.probability(deg);
        CHECK(p > 0.0);
        CHECK(p < 1.0);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("LoS probability rejects angles outside [0, 90]") {
    LosModel los;
    CHECK_THROWS_AS(los.probability(-0.5), std::domain_error);
    CHECK_THROWS_AS(los.probability(90.5), std::domain_error);
}

TEST_CASE("received power matches hand evaluation") {
    ChannelParams ch;
    CHECK(received_power(ch, 100.0, true, 1.0) == Catch::Approx(5e-6).epsilon(1e-12));
    CHECK(received_power(ch, 100.0, false, 1.0) == Catch::Approx(5e-9).epsilon(1e-12));
    CHECK(received_power(ch, 100.0, true, 0.0) == 0.0);
}

TEST_CASE("received power scales linearly in fading gain and power") {
    ChannelParams ch;
    const double base = received_power(ch, 250.0, true, 1.0);
    CHECK(received_power(ch, 250.0, true, 3.5) == Catch::Approx(3.5 * base));
    ChannelParams doubled = ch;
    doubled.p_uav *= 2.0;
    CHECK(received_power(doubled, 250.0, true, 1.0) == Catch::Approx(2.0 * base));
}

TEST_CASE("received power rejects nonpositive distance") {
    ChannelParams ch;
    CHECK_THROWS_AS(received_power(ch, 0.0, true, 1.0), std::domain_error);
    CHECK_THROWS_AS(received_power(ch, -1.0, true, 1.0), std::domain_error);
}

TEST_CASE("omni pattern has unit gain everywhere") {
    const auto omni = AntennaPattern::omni();
    CHECK_FALSE(omni.is_directional());
    for (double a : {0.0, 15.0, 90.0, 180.0})
        CHECK(omni.gain_linear(a) == 1.0);
}

TEST_CASE("directional pattern at 30 degrees beamwidth") {
    const auto pat = AntennaPattern::directional(30.0);
    REQUIRE(pat.is_directional());

    const double g0_db = 10.0 * std::log10(std::pow(1.6162 / std::sin(15.0 / kDegPerRad), 2.0));
    CHECK(pat.g0_db() == Catch::Approx(g0_db).epsilon(1e-12));
    CHECK(pat.gain_linear(0.0) == Catch::Approx(39.0).margin(0.05));

    // Half-power consistency: 3.01 dB down at half the beamwidth.
    CHECK(pat.gain_db(15.0) == Catch::Approx(g0_db - 3.01).epsilon(1e-12));

    // Side lobe beyond the main-lobe edge theta_ml/2 = 1.3 * 30 = 39 deg.
    const double gsl_db = -0.4111 * std::log(30.0) - 10.597;
    CHECK(pat.gsl_db() == Catch::Approx(gsl_db).epsilon(1e-12));
    CHECK(pat.gain_db(100.0) == Catch::Approx(-11.995).margin(5e-4));
    CHECK(pat.gain_linear(100.0) == Catch::Approx(0.0632).margin(5e-5));
}

TEST_CASE("directional gain never exceeds boresight and is nonincreasing on the main lobe") {
    const auto pat = AntennaPattern::directional(30.0);
    const double g0 = pat.boresight_linear();
    double prev = g0 + 1.0;
    for (double a = 0.0; a <= 180.0; a += 0.25) {
        const double g = pat.gain_linear(a);
        CHECK(g <= g0);
        if (a <= pat.theta_ml_deg() / 2.0) {
            CHECK(g <= prev);
            prev = g;
        }
    }
}

TEST_CASE("antenna gain rejects angles outside [0, 180]") {
    const auto pat = AntennaPattern::directional(30.0);
    CHECK_THROWS_AS(pat.gain_linear(-1.0), std::domain_error);
    CHECK_THROWS_AS(pat.gain_linear(180.5), std::domain_error);
}

TEST_CASE("beamwidth outside (0, 138.46) is rejected") {
    CHECK_THROWS_AS(AntennaPattern::directional(0.0), std::invalid_argument);
    CHECK_THROWS_AS(AntennaPattern::directional(138.47), std::invalid_argument);
    CHECK_NOTHROW(AntennaPattern::directional(138.0));
}

TEST_CASE("parameter validation enforces model invariants") {
    ChannelParams ch;
    CHECK_NOTHROW(ch.validate());
    ch.alpha_uav = 2.0;
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
    ch = ChannelParams{};
    ch.eta = 0.0;
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
    ch = ChannelParams{};
    ch.p_ground = -0.1;
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
}
