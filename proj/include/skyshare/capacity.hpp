#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skyshare/analytic.hpp"

namespace skyshare {

enum class LogBase { natural, base2 };

inline double rate_term(double beta, LogBase base) {
    const double r = std::log1p(beta);
    return base == LogBase::base2 ? r / std::numbers::ln2 : r;
}

struct HeightSearchSpec {
    std::vector<double> h_grid;
    double coverage_floor = 0.0;
    LogBase log_base = LogBase::natural;

    void validate() const {
        if (h_grid.empty())
            throw std::invalid_argument("HeightSearchSpec: empty altitude grid");
        double prev = 0.0;
        for (double h : h_grid) {
            if (!(h > prev))
                throw std::invalid_argument(
                    "HeightSearchSpec: altitudes must be positive and strictly increasing");
            prev = h;
        }
        if (!(coverage_floor >= 0.0 && coverage_floor <= 1.0))
            throw std::invalid_argument(
                "HeightSearchSpec: coverage_floor must be in [0, 1]");
    }
};

struct TcRecord {
    double h = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double tc = 0.0;
    bool feasible = false;
};

struct TcResult {
    std::vector<TcRecord> records;
    std::optional<TcRecord> best_feasible;
    std::vector<std::pair<double, double>> vacant_intervals;
};

// Per-area density of successful UAV links times per-link rate:
// lambda_u * P2 * log(1 + beta). For a volumetric tier lambda_u is the
// projected per-area density so 2D and 3D values are comparable.
inline double transmission_capacity(const Scenario& sc,
                                    LogBase base = LogBase::natural,
                                    double rel_tol = 1e-8) {
    const double lambda = sc.uav.projected_density();
    if (lambda == 0.0) return 0.0;
    return lambda * p2_coverage(sc, rel_tol).value * rate_term(sc.beta, base);
}

// Grid search for the TC-maximizing altitude subject to the ground-user
// coverage floor. Infeasible grid spans are reported as vacant intervals;
// an all-infeasible grid yields an empty best_feasible, which is distinct
// from a numeric failure (those propagate as exceptions).
inline TcResult optimize_height(const Scenario& scenario_template,
                                const HeightSearchSpec& spec,
                                double rel_tol = 1e-8) {
    spec.validate();
    const double rate = rate_term(scenario_template.beta, spec.log_base);

    TcResult result;
    result.records.reserve(spec.h_grid.size());
    for (double h : spec.h_grid) {
        Scenario sc = scenario_template;
        sc.uav.altitude = h;
        if (sc.uav.kind == DeploymentKind::uav3d) sc.uav.altitude_min = h;
        sc.validate();
        TcRecord rec;
        rec.h = h;
        rec.p1 = p1_coverage(sc, rel_tol).value;
        rec.p2 = p2_coverage(sc, rel_tol).value;
        rec.tc = sc.uav.projected_density() * rec.p2 * rate;
        rec.feasible = rec.p1 >= spec.coverage_floor;
        result.records.push_back(rec);
    }

    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const auto& rec = result.records[i];
        if (rec.feasible) {
            if (!result.best_feasible || rec.tc > result.best_feasible->tc)
                result.best_feasible = rec;
        } else if (i > 0 && !result.records[i - 1].feasible) {
            result.vacant_intervals.back().second = rec.h;
        } else {
            result.vacant_intervals.emplace_back(rec.h, rec.h);
        }
    }
    return result;
}

}  // namespace skyshare
