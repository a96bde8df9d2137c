#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "skyshare/channel.hpp"
#include "skyshare/estimate.hpp"
#include "skyshare/pointprocess.hpp"
#include "skyshare/quadrature.hpp"

namespace skyshare {

// Full description of one coverage experiment: both network tiers, the
// channel, the SINR threshold and the serving-link geometry.
struct Scenario {
    ChannelParams channel;
    LosModel los;
    AntennaPattern pattern = AntennaPattern::omni();
    double ground_density = 1e-3;                    // lambda_d, per m^2
    Deployment uav = Deployment::uav_2d(1e-4, 100.0);
    double beta = 0.1;
    double d0 = 10.0;
    // Serving-link distance for the UAV-network user. Empty = the serving
    // UAV hovers directly overhead (x0 equal to its altitude).
    std::optional<double> x0;

    double serving_altitude() const {
        return uav.kind == DeploymentKind::uav3d ? uav.altitude_min : uav.altitude;
    }

    double serving_distance() const { return x0 ? *x0 : serving_altitude(); }

    double serving_elevation_deg() const {
        if (!x0) return 90.0;
        return kDegPerRad * std::asin(serving_altitude() / *x0);
    }

    void validate() const {
        channel.validate();
        los.validate();
        uav.validate();
        if (uav.kind == DeploymentKind::ground2d)
            throw std::invalid_argument("Scenario: uav deployment must be uav2d or uav3d");
        if (!(ground_density >= 0.0))
            throw std::invalid_argument("Scenario: ground_density must be >= 0");
        if (!(beta > 0.0)) throw std::invalid_argument("Scenario: beta must be > 0");
        if (!(d0 > 0.0)) throw std::invalid_argument("Scenario: d0 must be > 0");
        if (x0 && *x0 < serving_altitude())
            throw std::domain_error(
                "Scenario: explicit x0 must be >= the serving altitude");
    }
};

// One Laplace-transform factor E[exp(-s I)] of an interference term.
struct LaplaceFactor {
    double value = 1.0;       // in (0, 1]
    std::string kernel_id;
    double s_argument = 0.0;
};

// Laplace transform of the ground-tier interference at s = beta d0^ad / Pd,
// in the closed form the PGFL admits for a plain power-law path loss.
inline LaplaceFactor ground_laplace_closed_form(double lambda_d, double beta,
                                                double d0, double alpha_d) {
    if (!(alpha_d > 2.0))
        throw std::domain_error("ground_laplace_closed_form: alpha_d must exceed 2");
    const double pi = std::numbers::pi;
    const double exponent = 2.0 * lambda_d * pi * pi *
                            std::pow(beta, 2.0 / alpha_d) * d0 * d0 /
                            (alpha_d * std::sin(2.0 * pi / alpha_d));
    return {std::exp(-exponent), "ground-closed-form", beta * std::pow(d0, alpha_d)};
}

// Same transform by direct quadrature of the defining PGFL integral;
// second, independent route used to check the closed form.
inline LaplaceFactor ground_laplace_quadrature(double lambda_d, double beta,
                                               double d0, double alpha_d,
                                               double rel_tol = 1e-9) {
    if (!(alpha_d > 2.0))
        throw std::domain_error("ground_laplace_quadrature: alpha_d must exceed 2");
    const double s_pl = beta * std::pow(d0, alpha_d);  // s * Pd cancels Pd
    auto kernel = [=](double r) {
        if (r <= 0.0) return 0.0;
        const double x = s_pl * std::pow(r, -alpha_d);
        return x / (1.0 + x) * r;
    };
    const double integral = integrate_semi_infinite(kernel, rel_tol, d0);
    return {std::exp(-2.0 * std::numbers::pi * lambda_d * integral),
            "ground-pgfl-quadrature", s_pl};
}

namespace detail {

// Combined LoS + NLoS radial kernel at interferer height z. Directional
// interferer beams point straight down, so the off-axis angle toward a
// victim at horizontal distance r is atan(r/z); gains enter relative to
// gain_norm (the serving beam's boresight gain), which keeps transmit
// power comparable between the omni and directional modes.
struct UavKernel {
    double s_eff;
    double z;
    const AntennaPattern* pattern;
    double gain_norm;
    double eta;
    double alpha_u;
    LosModel los;

    double operator()(double r) const noexcept {
        const double d2 = r * r + z * z;
        const double path = std::pow(d2, -0.5 * alpha_u);
        const double theta = kDegPerRad * std::atan2(z, r);
        const double p_los = los.probability_unchecked(theta);
        double g = 1.0;
        if (pattern->is_directional()) {
            const double off = kDegPerRad * std::atan2(r, z);
            g = pattern->gain_linear_unchecked(off) / gain_norm;
        }
        const double base = s_eff * path * g;
        const double x_los = base * p_los;
        const double x_nlos = base * eta * (1.0 - p_los);
        return (x_los / (1.0 + x_los) + x_nlos / (1.0 + x_nlos)) * r;
    }
};

}  // namespace detail

// Product of the LoS and NLoS interference Laplace factors for a planar
// UAV tier at altitude h, exp(-2 pi lam (H_LoS + H_NLoS)).
inline LaplaceFactor uav_laplace_2d(double s_eff, double lam, double h,
                                    const AntennaPattern& pattern,
                                    double gain_norm, const ChannelParams& ch,
                                    const LosModel& los, double rel_tol = 1e-8) {
    if (!(lam >= 0.0)) throw std::invalid_argument("uav_laplace_2d: lam < 0");
    if (!(h > 0.0)) throw std::invalid_argument("uav_laplace_2d: h <= 0");
    if (lam == 0.0 || s_eff == 0.0) return {1.0, "uav-2d", s_eff};
    detail::UavKernel kernel{s_eff, h, &pattern, gain_norm, ch.eta, ch.alpha_uav, los};
    const double integral = integrate_semi_infinite(kernel, rel_tol, std::max(1.0, h));
    return {std::exp(-2.0 * std::numbers::pi * lam * integral), "uav-2d", s_eff};
}

// Volumetric analogue: the radial kernel integrated over the slab
// z in [h1, h1 + dh] as an outer quadrature.
inline LaplaceFactor uav_laplace_3d(double s_eff, double lam, double h1,
                                    double dh, const AntennaPattern& pattern,
                                    double gain_norm, const ChannelParams& ch,
                                    const LosModel& los, double rel_tol = 1e-8) {
    if (!(lam >= 0.0)) throw std::invalid_argument("uav_laplace_3d: lam < 0");
    if (!(h1 > 0.0)) throw std::invalid_argument("uav_laplace_3d: h1 <= 0");
    if (!(dh > 0.0)) throw std::invalid_argument("uav_laplace_3d: dh <= 0");
    if (lam == 0.0 || s_eff == 0.0) return {1.0, "uav-3d", s_eff};
    auto slice = [&](double z) {
        detail::UavKernel kernel{s_eff, z, &pattern, gain_norm, ch.eta,
                                 ch.alpha_uav, los};
        return integrate_semi_infinite(kernel, rel_tol * 0.1, std::max(1.0, z));
    };
    const double integral = integrate_adaptive(slice, h1, h1 + dh, rel_tol * 0.1);
    return {std::exp(-2.0 * std::numbers::pi * lam * integral), "uav-3d", s_eff};
}

namespace detail {

inline LaplaceFactor uav_field_laplace(const Scenario& sc, double s_eff,
                                       double rel_tol) {
    const double gain_norm = sc.pattern.boresight_linear();
    if (sc.uav.kind == DeploymentKind::uav3d) {
        if (sc.uav.vertical_range == 0.0)  // zero projected density
            return {1.0, "uav-3d", s_eff};
        return uav_laplace_3d(s_eff, sc.uav.density, sc.uav.altitude_min,
                              sc.uav.vertical_range, sc.pattern, gain_norm,
                              sc.channel, sc.los, rel_tol);
    }
    return uav_laplace_2d(s_eff, sc.uav.density, sc.uav.altitude, sc.pattern,
                          gain_norm, sc.channel, sc.los, rel_tol);
}

}  // namespace detail

// Coverage probability of the typical ground-network user: product of the
// ground-tier Laplace factor, the UAV-tier LoS/NLoS factors and the noise
// term, all at s = beta d0^ad / Pd.
inline CoverageEstimate p1_coverage(const Scenario& sc, double rel_tol = 1e-8) {
    sc.validate();
    const double s_ground =
        sc.beta * std::pow(sc.d0, sc.channel.alpha_ground) / sc.channel.p_ground;
    const auto l_ground = ground_laplace_closed_form(
        sc.ground_density, sc.beta, sc.d0, sc.channel.alpha_ground);
    const auto l_uav =
        detail::uav_field_laplace(sc, s_ground * sc.channel.p_uav, rel_tol);
    const double noise_factor = std::exp(-s_ground * sc.channel.noise);
    return {l_ground.value * l_uav.value * noise_factor, 0.0, 0,
            EstimateMethod::analytic};
}

// Coverage probability of the typical UAV-network user: LoS/NLoS mixture
// over the serving link, each branch an interference-only Laplace product
// (noise excluded). The NLoS branch rescales the Laplace argument by 1/eta.
inline CoverageEstimate p2_coverage(const Scenario& sc, double rel_tol = 1e-8) {
    sc.validate();
    const double x0 = sc.serving_distance();
    const double theta0 = sc.serving_elevation_deg();
    const double p_los0 = sc.los.probability(theta0);
    const double s = sc.beta * std::pow(x0, sc.channel.alpha_uav);
    const auto l_los_branch = detail::uav_field_laplace(sc, s, rel_tol);
    const auto l_nlos_branch =
        detail::uav_field_laplace(sc, s / sc.channel.eta, rel_tol);
    return {p_los0 * l_los_branch.value + (1.0 - p_los0) * l_nlos_branch.value,
            0.0, 0, EstimateMethod::analytic};
}

}  // namespace skyshare
