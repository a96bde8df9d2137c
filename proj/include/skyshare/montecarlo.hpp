#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include "skyshare/analytic.hpp"
#include "skyshare/channel.hpp"
#include "skyshare/estimate.hpp"
#include "skyshare/pointprocess.hpp"
#include "skyshare/rng.hpp"

namespace skyshare {

// Two readings of the LoS/NLoS interference field. The analytic model
// multiplies the PGFLs of a LoS-weighted and an NLoS-weighted field
// over the same point set, which is equivalent to every interferer
// contributing two independent terms (paper_product). A per-interferer
// Bernoulli LoS draw (bernoulli_mixture) is the physically natural
// alternative and differs slightly; validation runs use paper_product.
enum class InterferenceModel { paper_product, bernoulli_mixture };

struct McConfig {
    std::uint64_t n_realizations = 100000;
    double truncation_radius = 10000.0;  // R_max
    std::uint64_t master_seed = 1;
    InterferenceModel interference_model = InterferenceModel::paper_product;

    void validate() const {
        if (n_realizations < 1)
            throw std::invalid_argument("McConfig: n_realizations must be >= 1");
        if (!(truncation_radius > 0.0))
            throw std::invalid_argument("McConfig: truncation_radius must be > 0");
    }
};

namespace detail {

// Stream tags per realization.
inline constexpr std::uint64_t kTagGround = 0;
inline constexpr std::uint64_t kTagUav = 1;
inline constexpr std::uint64_t kTagSignal = 2;

inline unsigned mc_thread_count() {
    if (const char* env = std::getenv("SKYSHARE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(begin, end) over disjoint index blocks; the per-block results
// are combined in block order so the reduction is schedule-independent.
template <typename Fn>
inline std::uint64_t parallel_block_sum(std::uint64_t n, Fn&& fn) {
    const unsigned threads = std::min<std::uint64_t>(mc_thread_count(), std::max<std::uint64_t>(n, 1));
    if (threads <= 1) return fn(0, n);
    const std::uint64_t block = (n + threads - 1) / threads;
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t b = t * block;
        const std::uint64_t e = std::min(n, b + block);
        pool.emplace_back([&partial, t, b, e, &fn] { partial[t] = b < e ? fn(b, e) : 0; });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (auto v : partial) total += v;
    return total;
}

inline double pow_neg_half_alpha(double d2, double alpha) noexcept {
    // d2^(-alpha/2) with fast paths for the exponents in common use.
    if (alpha == 4.0) return 1.0 / (d2 * d2);
    if (alpha == 3.0) return 1.0 / (d2 * std::sqrt(d2));
    if (alpha == 2.0) return 1.0 / d2;
    return std::pow(d2, -0.5 * alpha);
}

// Aggregate ground-tier interference for one realization: N points uniform
// in the truncation disk, independent unit-mean exponential fading. Only
// the distance matters, so d^2 is drawn directly (uniform in [0, R^2]).
inline double ground_field_interference(std::uint64_t seed, double lambda,
                                        double radius, double alpha,
                                        double power) {
    Xoshiro256 rng(seed);
    const double pi = std::numbers::pi;
    const double r2 = radius * radius;
    std::uint64_t n = 0;
    if (lambda > 0.0) {
        std::poisson_distribution<std::uint64_t> dist(lambda * pi * r2);
        n = dist(rng);
    }
    double acc = 0.0;
    constexpr std::uint64_t kBatch = 512;
    double d2[kBatch], g[kBatch];
    while (n > 0) {
        const std::uint64_t m = std::min(n, kBatch);
        for (std::uint64_t i = 0; i < m; ++i) {
            d2[i] = rng.uniform_pos() * r2;
            g[i] = rng.uniform_pos();
        }
        double local = 0.0;
        for (std::uint64_t i = 0; i < m; ++i)
            local += -std::log(g[i]) * pow_neg_half_alpha(d2[i], alpha);
        acc += local;
        n -= m;
    }
    return power * acc;
}

// Extends vec to n entries, filling index k with fn(k) in parallel blocks.
// fn(k) must be a pure function of k for the result to be schedule-free.
template <typename Fn>
inline void fill_series(std::vector<double>& vec, std::uint64_t n, Fn&& fn) {
    const std::uint64_t old = vec.size();
    if (old >= n) return;
    vec.resize(n);
    const unsigned threads = mc_thread_count();
    if (threads <= 1 || n - old < 256) {
        for (std::uint64_t k = old; k < n; ++k) vec[k] = fn(k);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t block = (n - old + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t b = old + t * block;
        const std::uint64_t e = std::min(n, b + block);
        if (b >= e) break;
        pool.emplace_back([&vec, b, e, &fn] {
            for (std::uint64_t k = b; k < e; ++k) vec[k] = fn(k);
        });
    }
    for (auto& th : pool) th.join();
}

// Process-wide memo of ground-field interference per realization index.
// The value for index k is a pure function of (master seed, lambda, R,
// alpha, power), so sharing it across scenarios that differ only in the
// UAV tier is exact, not an approximation.
class GroundFieldCache {
public:
    static const std::vector<double>& get(std::uint64_t master, double lambda,
                                          double radius, double alpha,
                                          double power, std::uint64_t n) {
        static GroundFieldCache instance;
        std::lock_guard<std::mutex> lock(instance.mutex_);
        auto& vec = instance.store_[Key{master, lambda, radius, alpha, power}];
        fill_series(vec, n, [&](std::uint64_t k) {
            return ground_field_interference(derive_stream(master, k, kTagGround),
                                             lambda, radius, alpha, power);
        });
        return vec;
    }

private:
    using Key = std::tuple<std::uint64_t, double, double, double, double>;
    std::mutex mutex_;
    std::map<Key, std::vector<double>> store_;
};

// Tabulated per-interferer factors for a planar UAV tier at altitude z,
// sampled by horizontal distance r. Knot spacing ~0.15 m at the default
// truncation radius; the factors vary on the scale of the altitude, so
// linear interpolation error is far below Monte Carlo resolution.
struct RadialTable {
    double inv_dr = 0.0;
    std::uint32_t last = 0;
    std::vector<double> a_los;   // P_u d^-au g_rel * P_LoS
    std::vector<double> a_nlos;  // P_u d^-au g_rel * eta (1 - P_LoS)
    std::vector<double> base;    // P_u d^-au g_rel
    std::vector<double> p_los;

    RadialTable(double z, double r_max, const ChannelParams& ch,
                const LosModel& los, const AntennaPattern& pattern,
                std::size_t knots = 1 << 16) {
        const double gain_norm = pattern.boresight_linear();
        a_los.resize(knots);
        a_nlos.resize(knots);
        base.resize(knots);
        p_los.resize(knots);
        const double dr = r_max / static_cast<double>(knots - 1);
        inv_dr = 1.0 / dr;
        last = static_cast<std::uint32_t>(knots - 2);
        for (std::size_t i = 0; i < knots; ++i) {
            const double r = dr * static_cast<double>(i);
            const double d2 = r * r + z * z;
            double g = 1.0;
            if (pattern.is_directional())
                g = pattern.gain_linear_unchecked(kDegPerRad * std::atan2(r, z)) /
                    gain_norm;
            const double b = ch.p_uav * pow_neg_half_alpha(d2, ch.alpha_uav) * g;
            const double p =
                los.probability_unchecked(kDegPerRad * std::atan2(z, r));
            base[i] = b;
            p_los[i] = p;
            a_los[i] = b * p;
            a_nlos[i] = b * ch.eta * (1.0 - p);
        }
    }
};

// One realization of the aggregate UAV-tier interference at a ground-level
// victim, planar tier, via the radial tables.
inline double uav_field_interference_2d(Xoshiro256& rng, std::uint64_t count,
                                        double r_max, const RadialTable& tab,
                                        double eta, InterferenceModel model) {
    double acc = 0.0;
    if (model == InterferenceModel::paper_product) {
        for (std::uint64_t i = 0; i < count; ++i) {
            const double r = r_max * std::sqrt(rng.uniform());
            const double f = r * tab.inv_dr;
            auto j = std::min(static_cast<std::uint32_t>(f), tab.last);
            const double w = f - static_cast<double>(j);
            const double al = tab.a_los[j] + w * (tab.a_los[j + 1] - tab.a_los[j]);
            const double an =
                tab.a_nlos[j] + w * (tab.a_nlos[j + 1] - tab.a_nlos[j]);
            acc += al * rng.exponential() + an * rng.exponential();
        }
    } else {
        for (std::uint64_t i = 0; i < count; ++i) {
            const double r = r_max * std::sqrt(rng.uniform());
            const double f = r * tab.inv_dr;
            auto j = std::min(static_cast<std::uint32_t>(f), tab.last);
            const double w = f - static_cast<double>(j);
            const double b = tab.base[j] + w * (tab.base[j + 1] - tab.base[j]);
            const double p = tab.p_los[j] + w * (tab.p_los[j + 1] - tab.p_los[j]);
            const bool los = rng.uniform() < p;
            acc += (los ? b : eta * b) * rng.exponential();
        }
    }
    return acc;
}

// Volumetric tier: per-point evaluation (no tables; desk-scale use).
inline double uav_field_interference_3d(Xoshiro256& rng, std::uint64_t count,
                                        double r_max, double h1, double dh,
                                        const ChannelParams& ch,
                                        const LosModel& los,
                                        const AntennaPattern& pattern,
                                        InterferenceModel model) {
    const double gain_norm = pattern.boresight_linear();
    const double r2max = r_max * r_max;
    double acc = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double rh2 = rng.uniform() * r2max;
        const double z = h1 + dh * rng.uniform();
        const double d2 = rh2 + z * z;
        const double rh = std::sqrt(rh2);
        double g = 1.0;
        if (pattern.is_directional())
            g = pattern.gain_linear_unchecked(kDegPerRad * std::atan2(rh, z)) /
                gain_norm;
        const double b = ch.p_uav * pow_neg_half_alpha(d2, ch.alpha_uav) * g;
        const double p = los.probability_unchecked(kDegPerRad * std::atan2(z, rh));
        if (model == InterferenceModel::paper_product) {
            acc += b * p * rng.exponential() +
                   b * ch.eta * (1.0 - p) * rng.exponential();
        } else {
            const bool is_los = rng.uniform() < p;
            acc += (is_los ? b : ch.eta * b) * rng.exponential();
        }
    }
    return acc;
}

struct UavFieldSampler {
    const Scenario& sc;
    const McConfig& mc;
    double mean_count;
    std::unique_ptr<RadialTable> table;  // planar tier only

    UavFieldSampler(const Scenario& scenario, const McConfig& config)
        : sc(scenario), mc(config) {
        const double pi = std::numbers::pi;
        const double area = pi * mc.truncation_radius * mc.truncation_radius;
        if (sc.uav.kind == DeploymentKind::uav3d) {
            mean_count = sc.uav.density * area * sc.uav.vertical_range;
        } else {
            mean_count = sc.uav.density * area;
            if (mean_count > 0.0)
                table = std::make_unique<RadialTable>(
                    sc.uav.altitude, mc.truncation_radius, sc.channel, sc.los,
                    sc.pattern);
        }
    }

    double draw(Xoshiro256& rng) const {
        if (mean_count <= 0.0) return 0.0;
        std::poisson_distribution<std::uint64_t> dist(mean_count);
        const std::uint64_t count = dist(rng);
        if (sc.uav.kind == DeploymentKind::uav3d)
            return uav_field_interference_3d(
                rng, count, mc.truncation_radius, sc.uav.altitude_min,
                sc.uav.vertical_range, sc.channel, sc.los, sc.pattern,
                mc.interference_model);
        return uav_field_interference_2d(rng, count, mc.truncation_radius,
                                         *table, sc.channel.eta,
                                         mc.interference_model);
    }
};

// Memo of aggregate UAV-tier interference per realization index. For a
// fixed tier configuration the draw for index k is a pure function of the
// master seed, so the ground-user and UAV-user estimators see the exact
// same field realizations whether or not the cache is shared.
class UavFieldCache {
public:
    static const std::vector<double>& get(const Scenario& sc, const McConfig& mc,
                                          std::uint64_t n) {
        static UavFieldCache instance;
        const Key key{static_cast<double>(mc.master_seed),
                      mc.truncation_radius,
                      static_cast<double>(static_cast<int>(mc.interference_model)),
                      static_cast<double>(static_cast<int>(sc.uav.kind)),
                      sc.uav.density,
                      sc.uav.altitude,
                      sc.uav.altitude_min,
                      sc.uav.vertical_range,
                      sc.channel.p_uav,
                      sc.channel.alpha_uav,
                      sc.channel.eta,
                      sc.los.b,
                      sc.los.c,
                      sc.pattern.is_directional() ? sc.pattern.theta_3db_deg() : 0.0};
        std::lock_guard<std::mutex> lock(instance.mutex_);
        auto& vec = instance.store_[key];
        if (vec.size() < n) {
            const UavFieldSampler sampler(sc, mc);
            fill_series(vec, n, [&](std::uint64_t k) {
                Xoshiro256 rng(derive_stream(mc.master_seed, k, kTagUav));
                return sampler.draw(rng);
            });
        }
        return vec;
    }

private:
    using Key = std::array<double, 14>;
    std::mutex mutex_;
    std::map<Key, std::vector<double>> store_;
};

inline CoverageEstimate make_binomial_estimate(std::uint64_t successes,
                                               std::uint64_t n) {
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return {p, se, n, EstimateMethod::monte_carlo};
}

}  // namespace detail

// Aggregate interference from an explicit point realization at a victim
// location. Points coplanar with the victim are ground-tier transmitters
// (plain power-law loss); elevated points are UAV transmitters with the
// LoS/NLoS channel and, in directional mode, beams pointed straight down
// with boresight-normalized gains.
inline double realize_interference(const PointSet& points, const Point3& victim,
                                   const ChannelParams& ch, const LosModel& los,
                                   const AntennaPattern& pattern,
                                   InterferenceModel model, Xoshiro256& rng) {
    const double gain_norm = pattern.boresight_linear();
    double acc = 0.0;
    for (const auto& pt : points) {
        const double dx = pt.x - victim.x;
        const double dy = pt.y - victim.y;
        const double dz = pt.z - victim.z;
        const double rh2 = dx * dx + dy * dy;
        if (dz == 0.0) {
            acc += ch.p_ground * detail::pow_neg_half_alpha(rh2, ch.alpha_ground) *
                   rng.exponential();
            continue;
        }
        const double d2 = rh2 + dz * dz;
        const double rh = std::sqrt(rh2);
        const double zabs = std::abs(dz);
        double g = 1.0;
        if (pattern.is_directional())
            g = pattern.gain_linear_unchecked(kDegPerRad * std::atan2(rh, zabs)) /
                gain_norm;
        const double base =
            ch.p_uav * detail::pow_neg_half_alpha(d2, ch.alpha_uav) * g;
        const double p =
            los.probability_unchecked(kDegPerRad * std::atan2(zabs, rh));
        if (model == InterferenceModel::paper_product) {
            acc += base * p * rng.exponential() +
                   base * ch.eta * (1.0 - p) * rng.exponential();
        } else {
            const bool is_los = rng.uniform() < p;
            acc += (is_los ? base : ch.eta * base) * rng.exponential();
        }
    }
    return acc;
}

// Empirical coverage probability of the typical ground-network user:
// fraction of realizations with Pd d0^-ad g0 / (I_ground + I_uav + N) > beta.
inline CoverageEstimate estimate_p1(const Scenario& sc, const McConfig& mc) {
    sc.validate();
    mc.validate();
    const auto& ground = detail::GroundFieldCache::get(
        mc.master_seed, sc.ground_density, mc.truncation_radius,
        sc.channel.alpha_ground, sc.channel.p_ground, mc.n_realizations);
    const auto& uav = detail::UavFieldCache::get(sc, mc, mc.n_realizations);
    const double signal_base =
        sc.channel.p_ground *
        detail::pow_neg_half_alpha(sc.d0 * sc.d0, sc.channel.alpha_ground);
    const double beta = sc.beta;
    const double noise = sc.channel.noise;

    const std::uint64_t successes = detail::parallel_block_sum(
        mc.n_realizations,
        [&](std::uint64_t begin, std::uint64_t end) -> std::uint64_t {
            std::uint64_t hits = 0;
            for (std::uint64_t k = begin; k < end; ++k) {
                Xoshiro256 sig_rng(
                    derive_stream(mc.master_seed, k, detail::kTagSignal));
                const double interference = ground[k] + uav[k];
                const double signal = signal_base * sig_rng.exponential();
                if (signal > beta * (interference + noise)) ++hits;
            }
            return hits;
        });
    return detail::make_binomial_estimate(successes, mc.n_realizations);
}

// Empirical coverage probability of the typical UAV-network user. The
// serving link draws a LoS state at the serving elevation angle (NLoS
// attenuates the signal by eta); interference comes from the UAV tier
// only, matching the interference-limited form of the analytic P2.
inline CoverageEstimate estimate_p2(const Scenario& sc, const McConfig& mc) {
    sc.validate();
    mc.validate();
    const auto& uav = detail::UavFieldCache::get(sc, mc, mc.n_realizations);
    const double x0 = sc.serving_distance();
    const double p_los0 = sc.los.probability(sc.serving_elevation_deg());
    const double signal_base =
        sc.channel.p_uav * detail::pow_neg_half_alpha(x0 * x0, sc.channel.alpha_uav);
    const double beta = sc.beta;
    const double eta = sc.channel.eta;

    const std::uint64_t successes = detail::parallel_block_sum(
        mc.n_realizations,
        [&](std::uint64_t begin, std::uint64_t end) -> std::uint64_t {
            std::uint64_t hits = 0;
            for (std::uint64_t k = begin; k < end; ++k) {
                Xoshiro256 sig_rng(
                    derive_stream(mc.master_seed, k, detail::kTagSignal));
                const bool serving_los = sig_rng.uniform() < p_los0;
                double signal = signal_base * sig_rng.exponential();
                if (!serving_los) signal *= eta;
                if (signal > beta * uav[k]) ++hits;
            }
            return hits;
        });
    return detail::make_binomial_estimate(successes, mc.n_realizations);
}

}  // namespace skyshare
