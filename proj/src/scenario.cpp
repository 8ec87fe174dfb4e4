#include "ccr/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ccr/error.hpp"
#include "json.hpp"

namespace ccr {

using nlohmann::json;

double horizontal_distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double slant_distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

int ScenarioConfig::cluster_capacity() const {
    if (max_cluster_size > 0) return max_cluster_size;
    const auto n = static_cast<int>(n_users());
    const int k = budget.k_channels;
    return std::max(1, (n + k - 1) / k);
}

double ScenarioConfig::channel_bandwidth() const {
    if (bandwidth_scaling == BandwidthScaling::per_member) return bandwidth_hz * cluster_capacity();
    return bandwidth_hz;
}

double ScenarioConfig::noise_power() const {
    return dbm_to_watts(noise_psd_dbm_hz + 10.0 * std::log10(channel_bandwidth()));
}

const Position& ScenarioConfig::primary_user(std::size_t k) const {
    return primary_users.at(k % primary_users.size());
}

std::vector<Position> generate_hotspot_users(const Hotspot& hotspot, std::size_t n, Rng& rng) {
    std::vector<Position> users;
    users.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = hotspot.radius * std::sqrt(rng.uniform());
        const double t = 2.0 * std::numbers::pi * rng.uniform();
        users.push_back({hotspot.center.x + r * std::cos(t), hotspot.center.y + r * std::sin(t), 0.0});
    }
    return users;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid scenario: " + what);
}

void check_position(const Position& p, const std::string& name) {
    require(std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z), name + " coordinates must be finite");
    require(p.z >= 0.0, name + " height must be >= 0");
}

}  // namespace

void validate(const ScenarioConfig& c) {
    check_position(c.pbs, "pbs");
    check_position(c.sbs, "sbs");
    check_position(c.uav, "uav");
    require(!c.primary_users.empty(), "primary_users must not be empty");
    require(!c.secondary_users.empty(), "secondary_users must not be empty");
    for (const auto& p : c.primary_users) check_position(p, "primary user");
    for (const auto& p : c.secondary_users) check_position(p, "secondary user");
    require(c.budget.k_channels >= 1, "k_channels must be >= 1");
    for (double p : {c.budget.pbs_dbm, c.budget.sbs_dbm, c.budget.uav_dbm})
        require(std::isfinite(p), "powers must be finite");
    require(c.bandwidth_hz > 0.0, "bandwidth must be > 0");
    require(c.carrier_hz > 0.0, "carrier frequency must be > 0");
    require(std::isfinite(c.itc_dbm), "itc must be finite");
    for (const auto& lp : {c.los_backhaul, c.los_access})
        require(lp.a > 0.0 && lp.b > 0.0, "LoS parameters a, b must be > 0");
    const auto& im = c.impairments;
    require(im.phi_serving >= 0.0 && im.phi_pbs >= 0.0, "hardware impairment level must be >= 0");
    require(im.csi_theta >= 0.0, "csi theta must be >= 0");
    require(im.csi_mu >= 0.0, "csi mu must be >= 0");
    require(im.fading.serving >= 1 && im.fading.pu >= 1 && im.fading.pbs >= 1,
            "fading shapes must be positive integers");
    require(c.rbar_bps >= 0.0, "rate threshold must be >= 0");
    require(c.hotspot.radius > 0.0, "hotspot radius must be > 0");
    require(c.region_radius > 0.0, "region radius must be > 0");
    require(c.max_cluster_size >= 0, "max_cluster_size must be >= 0");
    const auto need = (c.secondary_users.size() + c.budget.k_channels - 1) / c.budget.k_channels;
    require(c.max_cluster_size == 0 || static_cast<std::size_t>(c.max_cluster_size) >= need,
            "max_cluster_size too small to place every user");
    for (int axis = 0; axis < 3; ++axis) {
        const double lo[] = {c.search.lo.x, c.search.lo.y, c.search.lo.z};
        const double hi[] = {c.search.hi.x, c.search.hi.y, c.search.hi.z};
        require(lo[axis] <= hi[axis], "search box lower corner must not exceed upper corner");
    }
    require(c.search.lo.z >= 0.0, "search box heights must be >= 0");
}

namespace {

json to_json(const Position& p) { return json::array({p.x, p.y, p.z}); }

Position position_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ConfigError("invalid scenario: position must be [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Position> positions_from(const json& j) {
    if (!j.is_array()) throw ConfigError("invalid scenario: position list must be an array");
    std::vector<Position> out;
    for (const auto& e : j) out.push_back(position_from(e));
    return out;
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void read(const json& j, const char* key, Position& out) {
    if (j.contains(key)) out = position_from(j.at(key));
}

void read(const json& j, const char* key, LosParams& out) {
    if (!j.contains(key)) return;
    read(j.at(key), "a", out.a);
    read(j.at(key), "b", out.b);
}

BandwidthScaling scaling_from(const std::string& s) {
    if (s == "per_channel") return BandwidthScaling::per_channel;
    if (s == "per_member") return BandwidthScaling::per_member;
    throw ConfigError("invalid scenario: unknown bandwidth_scaling '" + s + "'");
}

Metric metric_from(const std::string& s) {
    if (s == "rate") return Metric::rate;
    if (s == "coverage") return Metric::coverage;
    throw ConfigError("invalid scenario: unknown metric '" + s + "'");
}

ScenarioConfig from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("invalid scenario: top level must be an object");
    if (!j.contains("rng_seed")) throw ConfigError("invalid scenario: rng_seed is required");

    ScenarioConfig c;
    c.rng_seed = j.at("rng_seed").get<std::uint64_t>();

    if (j.contains("nodes")) {
        const auto& n = j.at("nodes");
        read(n, "pbs", c.pbs);
        read(n, "sbs", c.sbs);
        read(n, "uav", c.uav);
        if (n.contains("primary_users")) c.primary_users = positions_from(n.at("primary_users"));
        if (n.contains("secondary_users")) c.secondary_users = positions_from(n.at("secondary_users"));
    }
    if (j.contains("hotspot")) {
        read(j.at("hotspot"), "center", c.hotspot.center);
        read(j.at("hotspot"), "radius", c.hotspot.radius);
    }
    if (j.contains("power_dbm")) {
        const auto& p = j.at("power_dbm");
        read(p, "pbs", c.budget.pbs_dbm);
        read(p, "sbs", c.budget.sbs_dbm);
        read(p, "uav", c.budget.uav_dbm);
    }
    read(j, "k_channels", c.budget.k_channels);
    read(j, "bandwidth_hz", c.bandwidth_hz);
    if (j.contains("bandwidth_scaling")) c.bandwidth_scaling = scaling_from(j.at("bandwidth_scaling"));
    read(j, "carrier_hz", c.carrier_hz);
    read(j, "itc_dbm", c.itc_dbm);
    read(j, "itc_pathloss", c.itc_pathloss);
    read(j, "los_backhaul", c.los_backhaul);
    read(j, "los_access", c.los_access);
    if (j.contains("eta_db")) {
        read(j.at("eta_db"), "los", c.eta_db.los);
        read(j.at("eta_db"), "nlos", c.eta_db.nlos);
    }
    if (j.contains("impairments")) {
        const auto& im = j.at("impairments");
        if (im.contains("phi")) {
            const auto& phi = im.at("phi");
            if (phi.is_number()) {
                c.impairments.phi_serving = c.impairments.phi_pbs = phi.get<double>();
            } else {
                read(phi, "serving", c.impairments.phi_serving);
                read(phi, "pbs", c.impairments.phi_pbs);
            }
        }
        read(im, "csi_theta", c.impairments.csi_theta);
        read(im, "csi_mu", c.impairments.csi_mu);
        if (im.contains("fading_m")) {
            const auto& m = im.at("fading_m");
            auto& f = c.impairments.fading;
            if (m.is_number_integer()) {
                f.serving = f.pu = f.pbs = m.get<int>();
            } else if (m.is_object()) {
                read(m, "serving", f.serving);
                read(m, "pu", f.pu);
                read(m, "pbs", f.pbs);
            } else {
                throw ConfigError("invalid scenario: fading_m must be a positive integer");
            }
        }
    }
    read(j, "noise_psd_dbm_hz", c.noise_psd_dbm_hz);
    read(j, "rbar_bps", c.rbar_bps);
    read(j, "region_radius", c.region_radius);
    read(j, "max_cluster_size", c.max_cluster_size);
    if (j.contains("metric")) c.metric = metric_from(j.at("metric"));
    if (j.contains("search")) {
        read(j.at("search"), "lo", c.search.lo);
        read(j.at("search"), "hi", c.search.hi);
    }

    if (c.primary_users.empty()) c.primary_users = {{1000.0, 1000.0, 0.0}};
    if (c.secondary_users.empty()) {
        std::size_t n = 0;
        read(j, "n_users", n);
        if (n > 0) {
            Rng rng(c.rng_seed, Stream::users);
            c.secondary_users = generate_hotspot_users(c.hotspot, n, rng);
        } else {
            c.secondary_users = {{500, 400, 0}, {450, 400, 0}, {350, 400, 0}, {300, 400, 0}};
        }
    }
    validate(c);
    return c;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario parse error: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
}

std::string serialize_scenario(const ScenarioConfig& c) {
    json pus = json::array();
    for (const auto& p : c.primary_users) pus.push_back(to_json(p));
    json sus = json::array();
    for (const auto& p : c.secondary_users) sus.push_back(to_json(p));
    const auto& im = c.impairments;
    json j = {
        {"rng_seed", c.rng_seed},
        {"nodes",
         {{"pbs", to_json(c.pbs)},
          {"sbs", to_json(c.sbs)},
          {"uav", to_json(c.uav)},
          {"primary_users", pus},
          {"secondary_users", sus}}},
        {"hotspot", {{"center", to_json(c.hotspot.center)}, {"radius", c.hotspot.radius}}},
        {"power_dbm", {{"pbs", c.budget.pbs_dbm}, {"sbs", c.budget.sbs_dbm}, {"uav", c.budget.uav_dbm}}},
        {"k_channels", c.budget.k_channels},
        {"bandwidth_hz", c.bandwidth_hz},
        {"bandwidth_scaling", c.bandwidth_scaling == BandwidthScaling::per_member ? "per_member" : "per_channel"},
        {"carrier_hz", c.carrier_hz},
        {"itc_dbm", c.itc_dbm},
        {"itc_pathloss", c.itc_pathloss},
        {"los_backhaul", {{"a", c.los_backhaul.a}, {"b", c.los_backhaul.b}}},
        {"los_access", {{"a", c.los_access.a}, {"b", c.los_access.b}}},
        {"eta_db", {{"los", c.eta_db.los}, {"nlos", c.eta_db.nlos}}},
        {"impairments",
         {{"phi", {{"serving", im.phi_serving}, {"pbs", im.phi_pbs}}},
          {"csi_theta", im.csi_theta},
          {"csi_mu", im.csi_mu},
          {"fading_m", {{"serving", im.fading.serving}, {"pu", im.fading.pu}, {"pbs", im.fading.pbs}}}}},
        {"noise_psd_dbm_hz", c.noise_psd_dbm_hz},
        {"rbar_bps", c.rbar_bps},
        {"region_radius", c.region_radius},
        {"max_cluster_size", c.max_cluster_size},
        {"metric", c.metric == Metric::rate ? "rate" : "coverage"},
        {"search", {{"lo", to_json(c.search.lo)}, {"hi", to_json(c.search.hi)}}},
    };
    return j.dump(2);
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace ccr
