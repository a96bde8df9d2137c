#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "skyshare/analytic.hpp"
#include "skyshare/capacity.hpp"
#include "skyshare/montecarlo.hpp"

namespace skyshare {

// Configuration problems (unreadable file, schema violation, bad value):
// the CLI maps these to exit code 2, as opposed to numeric failures (3).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Scenario scenario;
    McConfig mc;
    HeightSearchSpec search;
};

// Canonical configuration document with every default filled in. A scenario
// file may override any subset; keys not present here are rejected.
inline nlohmann::json default_config_json() {
    return nlohmann::json{
        {"channel",
         {{"p_uav", 5.0},
          {"p_ground", 0.1},
          {"alpha_uav", 3.0},
          {"alpha_ground", 4.0},
          {"eta", 1e-3},
          {"noise", 1e-9}}},
        {"los", {{"b", 0.136}, {"c", 11.95}}},
        {"antenna", {{"mode", "omni"}, {"theta_3db_deg", 30.0}}},
        {"ground_density", 1e-3},
        {"uav",
         {{"kind", "2d"},
          {"density", 1e-4},
          {"altitude", 100.0},
          {"altitude_min", 100.0},
          {"vertical_range", 50.0}}},
        {"beta", 0.1},
        {"d0", 10.0},
        {"x0", nullptr},
        {"mc",
         {{"n_realizations", std::uint64_t{100000}},
          {"truncation_radius", 10000.0},
          {"master_seed", std::uint64_t{1}},
          {"interference_model", "paper_product"}}},
        {"search",
         {{"h_min", 20.0},
          {"h_max", 1000.0},
          {"h_step", 20.0},
          {"coverage_floor", 0.0},
          {"log_base", "natural"}}}};
}

namespace detail {

inline void merge_checked(nlohmann::json& base, const nlohmann::json& user,
                          const std::string& prefix) {
    if (!user.is_object())
        throw ConfigError("expected an object at '" + (prefix.empty() ? "<root>" : prefix) + "'");
    for (const auto& [key, value] : user.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        auto it = base.find(key);
        if (it == base.end()) throw ConfigError("unknown key '" + path + "'");
        if (it->is_object()) {
            merge_checked(*it, value, path);
        } else {
            *it = value;
        }
    }
}

inline double get_number(const nlohmann::json& obj, const std::string& path) {
    const auto& v = obj.at(nlohmann::json::json_pointer(path));
    if (!v.is_number())
        throw ConfigError("'" + path + "' must be a number");
    return v.get<double>();
}

inline std::string get_string(const nlohmann::json& obj, const std::string& path) {
    const auto& v = obj.at(nlohmann::json::json_pointer(path));
    if (!v.is_string())
        throw ConfigError("'" + path + "' must be a string");
    return v.get<std::string>();
}

}  // namespace detail

// Overlays a user document on the defaults, rejecting unknown keys at
// every nesting level.
inline nlohmann::json merge_config(const nlohmann::json& user) {
    nlohmann::json cfg = default_config_json();
    detail::merge_checked(cfg, user, "");
    return cfg;
}

inline nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    nlohmann::json user;
    try {
        in >> user;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("parse error in '" + path + "': " + e.what());
    }
    return merge_config(user);
}

// Dotted-path override (e.g. "uav.density=0"). The path must already exist
// in the document; the value is parsed as JSON, falling back to a string.
inline void set_config_value(nlohmann::json& cfg, const std::string& path,
                             const std::string& value) {
    std::string ptr = "/";
    for (char c : path) ptr += (c == '.') ? '/' : c;
    const nlohmann::json::json_pointer jp(ptr);
    if (!cfg.contains(jp)) throw ConfigError("unknown key '" + path + "'");
    nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;
    if (cfg.at(jp).is_object())
        throw ConfigError("'" + path + "' is a section, not a value");
    cfg.at(jp) = parsed;
}

inline void set_config_value(nlohmann::json& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must look like key.path=value, got '" +
                          assignment + "'");
    set_config_value(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

inline RunConfig build_run_config(const nlohmann::json& cfg) {
    try {
        RunConfig rc;
        auto& ch = rc.scenario.channel;
        ch.p_uav = detail::get_number(cfg, "/channel/p_uav");
        ch.p_ground = detail::get_number(cfg, "/channel/p_ground");
        ch.alpha_uav = detail::get_number(cfg, "/channel/alpha_uav");
        ch.alpha_ground = detail::get_number(cfg, "/channel/alpha_ground");
        ch.eta = detail::get_number(cfg, "/channel/eta");
        ch.noise = detail::get_number(cfg, "/channel/noise");

        rc.scenario.los.b = detail::get_number(cfg, "/los/b");
        rc.scenario.los.c = detail::get_number(cfg, "/los/c");

        const std::string mode = detail::get_string(cfg, "/antenna/mode");
        if (mode == "omni") {
            rc.scenario.pattern = AntennaPattern::omni();
        } else if (mode == "directional") {
            rc.scenario.pattern = AntennaPattern::directional(
                detail::get_number(cfg, "/antenna/theta_3db_deg"));
        } else {
            throw ConfigError("antenna.mode must be 'omni' or 'directional'");
        }

        rc.scenario.ground_density = detail::get_number(cfg, "/ground_density");

        const std::string kind = detail::get_string(cfg, "/uav/kind");
        auto& uav = rc.scenario.uav;
        if (kind == "2d") {
            uav.kind = DeploymentKind::uav2d;
        } else if (kind == "3d") {
            uav.kind = DeploymentKind::uav3d;
        } else {
            throw ConfigError("uav.kind must be '2d' or '3d'");
        }
        uav.density = detail::get_number(cfg, "/uav/density");
        uav.altitude = detail::get_number(cfg, "/uav/altitude");
        uav.altitude_min = detail::get_number(cfg, "/uav/altitude_min");
        uav.vertical_range = detail::get_number(cfg, "/uav/vertical_range");

        rc.scenario.beta = detail::get_number(cfg, "/beta");
        rc.scenario.d0 = detail::get_number(cfg, "/d0");
        if (!cfg.at("x0").is_null())
            rc.scenario.x0 = detail::get_number(cfg, "/x0");

        rc.mc.n_realizations = cfg.at("mc").at("n_realizations").get<std::uint64_t>();
        rc.mc.truncation_radius = detail::get_number(cfg, "/mc/truncation_radius");
        rc.mc.master_seed = cfg.at("mc").at("master_seed").get<std::uint64_t>();
        const std::string model = detail::get_string(cfg, "/mc/interference_model");
        if (model == "paper_product") {
            rc.mc.interference_model = InterferenceModel::paper_product;
        } else if (model == "bernoulli_mixture") {
            rc.mc.interference_model = InterferenceModel::bernoulli_mixture;
        } else {
            throw ConfigError(
                "mc.interference_model must be 'paper_product' or 'bernoulli_mixture'");
        }

        const double h_min = detail::get_number(cfg, "/search/h_min");
        const double h_max = detail::get_number(cfg, "/search/h_max");
        const double h_step = detail::get_number(cfg, "/search/h_step");
        if (!(h_step > 0.0) || !(h_min > 0.0) || !(h_max >= h_min))
            throw ConfigError("search grid requires 0 < h_min <= h_max and h_step > 0");
        for (double h = h_min; h <= h_max * (1.0 + 1e-12); h += h_step)
            rc.search.h_grid.push_back(h);
        rc.search.coverage_floor = detail::get_number(cfg, "/search/coverage_floor");
        const std::string base = detail::get_string(cfg, "/search/log_base");
        if (base == "natural") {
            rc.search.log_base = LogBase::natural;
        } else if (base == "base2") {
            rc.search.log_base = LogBase::base2;
        } else {
            throw ConfigError("search.log_base must be 'natural' or 'base2'");
        }

        rc.scenario.validate();
        rc.mc.validate();
        rc.search.validate();
        return rc;
    } catch (const ConfigError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
}

}  // namespace skyshare
