#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "skyshare/analytic.hpp"
#include "skyshare/montecarlo.hpp"

using namespace skyshare;

namespace {

// Desk-scale settings: thinner ground tier and tighter truncation keep the
// unit suite fast; the full Table-2 field is exercised by the acceptance run.
Scenario desk_scenario(double h = 100.0) {
    Scenario sc;
    sc.uav = Deployment::uav_2d(1e-4, h);
    return sc;
}

McConfig desk_mc(std::uint64_t n, double rmax = 3000.0, std::uint64_t seed = 1) {
    McConfig mc;
    mc.n_realizations = n;
    mc.truncation_radius = rmax;
    mc.master_seed = seed;
    return mc;
}

}  // namespace

TEST_CASE("interference of an empty realization is zero") {
    Xoshiro256 rng(1);
    const ChannelParams ch;
    const LosModel los;
    CHECK(realize_interference({}, {0, 0, 0}, ch, los, AntennaPattern::omni(),
                               InterferenceModel::paper_product, rng) == 0.0);
}

TEST_CASE("single ground interferer at 10 m averages Pd * 10^-4 over fading") {
    const ChannelParams ch;
    const LosModel los;
    const PointSet pts = {{10.0, 0.0, 0.0}};
    Xoshiro256 rng(99);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += realize_interference(pts, {0, 0, 0}, ch, los, AntennaPattern::omni(),
                                    InterferenceModel::paper_product, rng);
    const double mean = sum / n;
    const double expected = 1e-5;  // Pd d^-ad with unit-mean fading
    CHECK(std::abs(mean - expected) <= 3.0 * expected / std::sqrt(double(n)));
}

TEST_CASE("ground-field mean interference matches Campbell's theorem") {
    const ChannelParams ch;
    const LosModel los;
    const double lambda = 1e-3, R = 1000.0, d_min = 10.0;
    // 2 pi lambda Pd int_{d_min}^{R} r^(1-ad) dr, unit-mean fading.
    const double expected = 2.0 * std::numbers::pi * lambda * ch.p_ground *
                            0.5 * (std::pow(d_min, -2.0) - std::pow(R, -2.0));
    const int reps = 400;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < reps; ++i) {
        PointSet pts;
        for (const auto& p : sample_disk_ppp(lambda, R, 0.0, 31000 + i))
            if (p.x * p.x + p.y * p.y >= d_min * d_min) pts.push_back(p);
        Xoshiro256 rng(derive_stream(5, i, 9));
        const double v =
            realize_interference(pts, {0, 0, 0}, ch, los, AntennaPattern::omni(),
                                 InterferenceModel::paper_product, rng);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / reps;
    const double se =
        std::sqrt((sum_sq / reps - mean * mean) / static_cast<double>(reps));
    CHECK(std::abs(mean - expected) <= 3.0 * se);
}

TEST_CASE("noise-only coverage matches the closed form") {
    Scenario sc = desk_scenario();
    sc.ground_density = 0.0;
    sc.uav.density = 0.0;
    const auto est = estimate_p1(sc, desk_mc(100000));
    const double expected = std::exp(-0.1 * 1e4 * 1e-9 / 0.1);  // 0.99999
    CHECK(std::abs(est.value - expected) <= 3.0 * est.std_error + 1e-5);
}

TEST_CASE("ground-only coverage reproduces the closed form within 3 stderr") {
    Scenario sc = desk_scenario();
    sc.uav.density = 0.0;
    const auto est = estimate_p1(sc, desk_mc(20000));
    CHECK(std::abs(est.value - 0.8555060) <= 3.0 * est.std_error + 5e-4);
    CHECK(est.std_error ==
          Catch::Approx(std::sqrt(est.value * (1.0 - est.value) / 20000.0)));
    CHECK(est.n == 20000);
}

TEST_CASE("estimators cross-validate the analytic coverage at desk scale") {
    const Scenario sc = desk_scenario();
    const auto mc = desk_mc(20000);
    const auto p1 = estimate_p1(sc, mc);
    const auto p2 = estimate_p2(sc, mc);
    const double a1 = p1_coverage(sc).value;
    const double a2 = p2_coverage(sc).value;
    INFO("p1 mc=" << p1.value << " analytic=" << a1);
    INFO("p2 mc=" << p2.value << " analytic=" << a2);
    CHECK(std::abs(p1.value - a1) <= 3.0 * p1.std_error + 0.005);
    CHECK(std::abs(p2.value - a2) <= 3.0 * p2.std_error + 0.005);
}

TEST_CASE("volumetric deployment cross-validates at desk scale") {
    Scenario sc;
    sc.uav = Deployment::uav_3d(1e-6, 100.0, 50.0);
    const auto mc = desk_mc(20000);
    const auto p1 = estimate_p1(sc, mc);
    const auto p2 = estimate_p2(sc, mc);
    CHECK(std::abs(p1.value - p1_coverage(sc).value) <= 3.0 * p1.std_error + 0.005);
    CHECK(std::abs(p2.value - p2_coverage(sc).value) <= 3.0 * p2.std_error + 0.005);
}

TEST_CASE("fixed seed gives identical estimates") {
    const Scenario sc = desk_scenario();
    const auto a = estimate_p1(sc, desk_mc(5000));
    const auto b = estimate_p1(sc, desk_mc(5000));
    CHECK(a.value == b.value);
    const auto c = estimate_p1(sc, desk_mc(5000, 3000.0, 2));
    CHECK(a.value != c.value);
}

TEST_CASE("doubling the truncation radius moves the estimate by under one stderr") {
    Scenario sc = desk_scenario();
    sc.ground_density = 1e-4;
    const auto narrow = estimate_p1(sc, desk_mc(10000, 2000.0, 11));
    const auto wide = estimate_p1(sc, desk_mc(10000, 4000.0, 11));
    CHECK(std::abs(narrow.value - wide.value) <= narrow.std_error);
}

TEST_CASE("Bernoulli LoS model stays near the product-field model") {
    Scenario sc = desk_scenario();
    auto mc = desk_mc(20000);
    mc.interference_model = InterferenceModel::bernoulli_mixture;
    const auto p2 = estimate_p2(sc, mc);
    // The models differ slightly by construction; both track the analytic value.
    CHECK(std::abs(p2.value - p2_coverage(sc).value) <= 3.0 * p2.std_error + 0.01);
}

TEST_CASE("directional estimates cross-validate the directional analytics") {
    Scenario sc = desk_scenario();
    sc.pattern = AntennaPattern::directional(30.0);
    const auto mc = desk_mc(20000);
    const auto p1 = estimate_p1(sc, mc);
    const auto p2 = estimate_p2(sc, mc);
    CHECK(std::abs(p1.value - p1_coverage(sc).value) <= 3.0 * p1.std_error + 0.005);
    CHECK(std::abs(p2.value - p2_coverage(sc).value) <= 3.0 * p2.std_error + 0.005);
}

TEST_CASE("configuration validation") {
    McConfig mc;
    mc.n_realizations = 0;
    CHECK_THROWS_AS(mc.validate(), std::invalid_argument);
    mc = McConfig{};
    mc.truncation_radius = 0.0;
    CHECK_THROWS_AS(mc.validate(), std::invalid_argument);
}
