// Command-line front end: scenario files in, CSV out.
// Subcommands: eval, sweep, optimize, validate.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skyshare/capacity.hpp"
#include "skyshare/montecarlo.hpp"
#include "skyshare/scenario_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

constexpr const char* kCsvHeader =
    "param,p1_analytic,p1_mc,p1_mc_stderr,p2_analytic,p2_mc,p2_mc_stderr,tc,"
    "feasible";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct CommonOpts {
    std::string file;
    std::vector<std::string> overrides;
    std::string estimator = "analytic";
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> n;
    std::optional<double> rmax;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_estimator = true) {
    cmd->add_option("-f,--file", o.file, "scenario file (JSON)");
    cmd->add_option("--set", o.overrides, "override, key.path=value (repeatable)");
    if (with_estimator)
        cmd->add_option("--estimator", o.estimator, "analytic|mc|both")
            ->check(CLI::IsMember({"analytic", "mc", "both"}));
    cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
    cmd->add_option("--seed", o.seed, "Monte Carlo master seed");
    cmd->add_option("--n", o.n, "Monte Carlo realization count");
    cmd->add_option("--rmax", o.rmax, "interferer field truncation radius, m");
}

nlohmann::json load_config(const CommonOpts& o) {
    nlohmann::json cfg = o.file.empty() ? skyshare::default_config_json()
                                        : skyshare::load_config_file(o.file);
    for (const auto& ov : o.overrides) skyshare::set_config_value(cfg, ov);
    return cfg;
}

skyshare::RunConfig finalize(const nlohmann::json& cfg, const CommonOpts& o) {
    skyshare::RunConfig rc = skyshare::build_run_config(cfg);
    if (o.seed) rc.mc.master_seed = *o.seed;
    if (o.n) rc.mc.n_realizations = *o.n;
    if (o.rmax) rc.mc.truncation_radius = *o.rmax;
    rc.mc.validate();
    return rc;
}

struct Row {
    std::string param;
    std::string p1_a, p1_m, p1_se, p2_a, p2_m, p2_se, tc, feasible;
    std::string csv() const {
        return param + "," + p1_a + "," + p1_m + "," + p1_se + "," + p2_a +
               "," + p2_m + "," + p2_se + "," + tc + "," + feasible;
    }
};

// Evaluates one scenario point. Every number comes straight from a library
// operation; this layer only formats.
Row evaluate_row(double param, const skyshare::RunConfig& rc, bool analytic,
                 bool mc) {
    Row row;
    row.param = fmt(param);
    if (analytic) {
        const auto p1 = skyshare::p1_coverage(rc.scenario);
        const auto p2 = skyshare::p2_coverage(rc.scenario);
        row.p1_a = fmt(p1.value);
        row.p2_a = fmt(p2.value);
        row.tc = fmt(rc.scenario.uav.projected_density() * p2.value *
                     skyshare::rate_term(rc.scenario.beta, rc.search.log_base));
        row.feasible = p1.value >= rc.search.coverage_floor ? "true" : "false";
    }
    if (mc) {
        const auto p1 = skyshare::estimate_p1(rc.scenario, rc.mc);
        const auto p2 = skyshare::estimate_p2(rc.scenario, rc.mc);
        row.p1_m = fmt(p1.value);
        row.p1_se = fmt(p1.std_error);
        row.p2_m = fmt(p2.value);
        row.p2_se = fmt(p2.std_error);
        if (!analytic)
            row.feasible = p1.value >= rc.search.coverage_floor ? "true" : "false";
    }
    return row;
}

int write_csv(const std::string& out, const std::vector<Row>& rows) {
    std::string text = std::string(kCsvHeader) + "\n";
    for (const auto& r : rows) text += r.csv() + "\n";
    if (out.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write '" << out << "'\n";
        return kExitConfig;
    }
    f << text;
    return kExitOk;
}

int run_eval(const CommonOpts& o, const std::string& target) {
    const auto rc = finalize(load_config(o), o);
    const bool analytic = o.estimator != "mc";
    const bool mc = o.estimator != "analytic";
    if (analytic) {
        if (target.empty() || target == "p1")
            std::cout << "p1 analytic " << fmt(skyshare::p1_coverage(rc.scenario).value)
                      << "\n";
        if (target.empty() || target == "p2")
            std::cout << "p2 analytic " << fmt(skyshare::p2_coverage(rc.scenario).value)
                      << "\n";
        if (target.empty() || target == "tc")
            std::cout << "tc analytic "
                      << fmt(skyshare::transmission_capacity(rc.scenario,
                                                             rc.search.log_base))
                      << "\n";
    }
    if (mc) {
        if (target.empty() || target == "p1") {
            const auto e = skyshare::estimate_p1(rc.scenario, rc.mc);
            std::cout << "p1 mc " << fmt(e.value) << " stderr " << fmt(e.std_error)
                      << "\n";
        }
        if (target.empty() || target == "p2" || target == "tc") {
            const auto e = skyshare::estimate_p2(rc.scenario, rc.mc);
            if (target.empty() || target == "p2")
                std::cout << "p2 mc " << fmt(e.value) << " stderr "
                          << fmt(e.std_error) << "\n";
            if (target.empty() || target == "tc")
                std::cout << "tc mc "
                          << fmt(rc.scenario.uav.projected_density() * e.value *
                                 skyshare::rate_term(rc.scenario.beta,
                                                     rc.search.log_base))
                          << "\n";
        }
    }
    return kExitOk;
}

const std::vector<std::string> kSweepParams = {
    "uav.altitude",       "uav.density", "uav.altitude_min",
    "uav.vertical_range", "beta",        "ground_density",
    "x0"};

int run_sweep(const CommonOpts& o, const std::string& param, double start,
              double stop, double step, const std::string& density_mode) {
    if (!(step > 0.0) || !(start < stop))
        throw skyshare::ConfigError("sweep requires step > 0 and start < stop");
    nlohmann::json cfg = load_config(o);
    const bool analytic = o.estimator != "mc";
    const bool mc = o.estimator != "analytic";

    // Fixed projected density: hold density * vertical_range at its
    // configured value while the range is swept.
    double projected = 0.0;
    const bool hold_projected =
        param == "uav.vertical_range" && density_mode == "projected";
    if (hold_projected)
        projected = cfg["uav"]["density"].get<double>() *
                    cfg["uav"]["vertical_range"].get<double>();

    std::string ptr = "/";
    for (char c : param) ptr += (c == '.') ? '/' : c;
    const nlohmann::json::json_pointer jp(ptr);
    if (!cfg.contains(jp))
        throw skyshare::ConfigError("unknown sweep parameter '" + param + "'");

    std::vector<Row> rows;
    bool any_failure = false;
    for (double v = start; v <= stop * (1.0 + 1e-12); v += step) {
        cfg[jp] = v;
        if (hold_projected) cfg["uav"]["density"] = projected / v;
        try {
            rows.push_back(evaluate_row(v, finalize(cfg, o), analytic, mc));
        } catch (const skyshare::ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            std::cerr << "warning: " << param << "=" << fmt(v) << ": " << e.what()
                      << "\n";
            Row row;
            row.param = fmt(v);
            rows.push_back(row);
            any_failure = true;
        }
    }
    const int rcode = write_csv(o.out, rows);
    if (rcode != kExitOk) return rcode;
    return any_failure ? kExitNumeric : kExitOk;
}

int run_optimize(const CommonOpts& o) {
    const auto rc = finalize(load_config(o), o);
    const auto result = skyshare::optimize_height(rc.scenario, rc.search);
    std::vector<Row> rows;
    for (const auto& rec : result.records) {
        Row row;
        row.param = fmt(rec.h);
        row.p1_a = fmt(rec.p1);
        row.p2_a = fmt(rec.p2);
        row.tc = fmt(rec.tc);
        row.feasible = rec.feasible ? "true" : "false";
        rows.push_back(row);
    }
    if (!o.out.empty()) {
        const int rcode = write_csv(o.out, rows);
        if (rcode != kExitOk) return rcode;
    }
    if (result.best_feasible) {
        const auto& b = *result.best_feasible;
        std::cout << "best_altitude " << fmt(b.h) << " tc " << fmt(b.tc) << " p1 "
                  << fmt(b.p1) << " p2 " << fmt(b.p2) << "\n";
    } else {
        std::cout << "no feasible altitude\n";
    }
    for (const auto& [lo, hi] : result.vacant_intervals)
        std::cout << "vacant_interval " << fmt(lo) << " " << fmt(hi) << "\n";
    if (o.out.empty()) return write_csv(o.out, rows);
    return kExitOk;
}

int run_validate(const CommonOpts& o) {
    const auto rc = finalize(load_config(o), o);
    Row row = evaluate_row(rc.scenario.serving_altitude(), rc, true, true);
    const double d1 = std::abs(std::strtod(row.p1_a.c_str(), nullptr) -
                               std::strtod(row.p1_m.c_str(), nullptr));
    const double d2 = std::abs(std::strtod(row.p2_a.c_str(), nullptr) -
                               std::strtod(row.p2_m.c_str(), nullptr));
    const double s1 = std::strtod(row.p1_se.c_str(), nullptr);
    const double s2 = std::strtod(row.p2_se.c_str(), nullptr);
    std::cout << "p1 analytic " << row.p1_a << " mc " << row.p1_m << " stderr "
              << row.p1_se << " diff " << fmt(d1)
              << (d1 <= 3.0 * s1 + 0.005 ? " agree" : " disagree") << "\n";
    std::cout << "p2 analytic " << row.p2_a << " mc " << row.p2_m << " stderr "
              << row.p2_se << " diff " << fmt(d2)
              << (d2 <= 3.0 * s2 + 0.005 ? " agree" : " disagree") << "\n";
    return write_csv(o.out, {row});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coverage and transmission-capacity calculator for a UAV "
                 "tier sharing spectrum with a ground network"};
    app.require_subcommand(1);

    CommonOpts eval_o, sweep_o, opt_o, val_o;
    std::string target;
    std::string sweep_param, density_mode = "volumetric";
    double start = 0.0, stop = 0.0, step = 0.0;

    auto* eval = app.add_subcommand("eval", "evaluate one scenario");
    add_common(eval, eval_o);
    eval->add_option("--target", target, "p1|p2|tc (default: all)")
        ->check(CLI::IsMember({"p1", "p2", "tc"}));

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter, CSV out");
    add_common(sweep, sweep_o);
    sweep->add_option("--param", sweep_param, "parameter path")
        ->required()
        ->check(CLI::IsMember(kSweepParams));
    sweep->add_option("--start", start)->required();
    sweep->add_option("--stop", stop)->required();
    sweep->add_option("--step", step)->required();
    sweep->add_option("--density-mode", density_mode,
                      "volumetric|projected (vertical_range sweeps)")
        ->check(CLI::IsMember({"volumetric", "projected"}));

    auto* opt = app.add_subcommand("optimize", "altitude grid search");
    add_common(opt, opt_o, /*with_estimator=*/false);

    auto* val = app.add_subcommand("validate", "paired analytic/MC run");
    add_common(val, val_o, /*with_estimator=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (eval->parsed()) return run_eval(eval_o, target);
        if (sweep->parsed())
            return run_sweep(sweep_o, sweep_param, start, stop, step, density_mode);
        if (opt->parsed()) return run_optimize(opt_o);
        if (val->parsed()) return run_validate(val_o);
    } catch (const skyshare::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
