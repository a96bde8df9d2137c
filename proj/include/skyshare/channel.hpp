#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace skyshare {

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;

// Transmit powers, path-loss exponents, NLoS attenuation and noise power.
struct ChannelParams {
    double p_uav = 5.0;        // W
    double p_ground = 0.1;     // W
    double alpha_uav = 3.0;    // air-to-ground path-loss exponent
    double alpha_ground = 4.0; // ground-to-ground path-loss exponent
    double eta = 1e-3;         // NLoS diminution factor, in (0,1]
    double noise = 1e-9;       // W

    void validate() const {
        if (!(p_uav > 0.0) || !(p_ground > 0.0))
            throw std::invalid_argument("ChannelParams: transmit powers must be > 0");
        if (!(noise >= 0.0))
            throw std::invalid_argument("ChannelParams: noise must be >= 0");
        if (!(alpha_uav > 2.0) || !(alpha_ground > 2.0))
            throw std::invalid_argument(
                "ChannelParams: path-loss exponents must exceed 2 for the "
                "interference integrals to converge");
        if (!(eta > 0.0 && eta <= 1.0))
            throw std::invalid_argument("ChannelParams: eta must lie in (0,1]");
    }
};

// Elevation-angle line-of-sight probability, 1/(1 + C exp(-B (theta - C))).
struct LosModel {
    double b = 0.136;
    double c = 11.95;

    void validate() const {
        if (!(b > 0.0) || !(c > 0.0))
            throw std::invalid_argument("LosModel: B and C must be > 0");
    }

    double probability(double theta_deg) const {
        if (!(theta_deg >= 0.0 && theta_deg <= 90.0))
            throw std::domain_error("LosModel: elevation angle outside [0, 90] deg");
        return probability_unchecked(theta_deg);
    }

    // No range check; hot path for integrands and samplers where the angle
    // comes from atan2 and is in range by construction.
    double probability_unchecked(double theta_deg) const noexcept {
        return 1.0 / (1.0 + c * std::exp(-b * (theta_deg - c)));
    }
};

// Received power of a single link: P d^-alpha g, NLoS attenuated by eta.
inline double received_power(const ChannelParams& p, double distance, bool los,
                             double fading_gain) {
    if (!(distance > 0.0))
        throw std::domain_error("received_power: distance must be > 0");
    if (!(fading_gain >= 0.0))
        throw std::domain_error("received_power: fading gain must be >= 0");
    const double base =
        p.p_uav * std::pow(distance, -p.alpha_uav) * fading_gain;
    return los ? base : p.eta * base;
}

// Piecewise main-lobe/side-lobe antenna pattern with half-power beamwidth
// theta_3db. Gains are defined in dB and converted to linear scale here,
// once, so everything downstream works in linear units.
class AntennaPattern {
public:
    static AntennaPattern omni() { return AntennaPattern{}; }

    static AntennaPattern directional(double theta_3db_deg) {
        if (!(theta_3db_deg > 0.0 && theta_3db_deg < 138.46))
            throw std::invalid_argument(
                "AntennaPattern: theta_3db must lie in (0, 138.46) deg");
        AntennaPattern p;
        p.directional_ = true;
        p.theta_3db_ = theta_3db_deg;
        const double half_rad = theta_3db_deg / 2.0 / kDegPerRad;
        p.g0_db_ = 10.0 * std::log10(std::pow(1.6162 / std::sin(half_rad), 2.0));
        p.theta_ml_ = 2.6 * theta_3db_deg;
        p.gsl_db_ = -0.4111 * std::log(theta_3db_deg) - 10.597;
        return p;
    }

    bool is_directional() const noexcept { return directional_; }
    double theta_3db_deg() const noexcept { return theta_3db_; }
    double theta_ml_deg() const noexcept { return theta_ml_; }
    double g0_db() const noexcept { return g0_db_; }
    double gsl_db() const noexcept { return gsl_db_; }

    double gain_db(double off_axis_deg) const {
        check_angle(off_axis_deg);
        if (!directional_) return 0.0;
        if (off_axis_deg <= theta_ml_ / 2.0) {
            const double u = 2.0 * off_axis_deg / theta_3db_;
            return g0_db_ - 3.01 * u * u;
        }
        return gsl_db_;
    }

    double gain_linear(double off_axis_deg) const {
        check_angle(off_axis_deg);
        if (!directional_) return 1.0;
        return gain_linear_unchecked(off_axis_deg);
    }

    double gain_linear_unchecked(double off_axis_deg) const noexcept {
        if (!directional_) return 1.0;
        if (off_axis_deg <= theta_ml_ / 2.0) {
            const double u = 2.0 * off_axis_deg / theta_3db_;
            return std::pow(10.0, (g0_db_ - 3.01 * u * u) / 10.0);
        }
        return std::pow(10.0, gsl_db_ / 10.0);
    }

    // Linear boresight gain G_0 (1 for the omni pattern).
    double boresight_linear() const noexcept {
        return directional_ ? std::pow(10.0, g0_db_ / 10.0) : 1.0;
    }

private:
    static void check_angle(double off_axis_deg) {
        if (!(off_axis_deg >= 0.0 && off_axis_deg <= 180.0))
            throw std::domain_error(
                "AntennaPattern: off-axis angle outside [0, 180] deg");
    }

    bool directional_ = false;
    double theta_3db_ = 0.0;
    double g0_db_ = 0.0;
    double theta_ml_ = 0.0;
    double gsl_db_ = 0.0;
};

}  // namespace skyshare
