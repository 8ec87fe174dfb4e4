#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ccr/rng.hpp"

namespace ccr {

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;  // height above ground

    friend bool operator==(const Position&, const Position&) = default;
};

double horizontal_distance(const Position& a, const Position& b);
double slant_distance(const Position& a, const Position& b);

// Sigmoid LoS-probability parameters.
struct LosParams {
    double a = 0.0;
    double b = 0.0;

    friend bool operator==(const LosParams&, const LosParams&) = default;
};

// Excess attenuation of LoS / NLoS paths on top of free space.
struct EtaDb {
    double los = 1.6;
    double nlos = 20.0;

    friend bool operator==(const EtaDb&, const EtaDb&) = default;
};

struct Hotspot {
    Position center{400.0, 400.0, 0.0};
    double radius = 100.0;

    friend bool operator==(const Hotspot&, const Hotspot&) = default;
};

// Nakagami shapes per link class: serving links (X), links toward the
// primary user (Y) and links from the primary base station (Z).
struct FadingShapes {
    int serving = 2;
    int pu = 2;
    int pbs = 2;

    friend bool operator==(const FadingShapes&, const FadingShapes&) = default;
};

struct Impairments {
    double phi_serving = 0.0;  // aggregate HI level of SBS->UAV and UAV->SU
    double phi_pbs = 0.0;      // aggregate HI level of PBS interference links
    double csi_theta = 0.0;    // 0 means perfect CSI
    double csi_mu = 0.0;
    FadingShapes fading;

    friend bool operator==(const Impairments&, const Impairments&) = default;
};

// Transmit powers are totals; each of the K channels gets 1/K of them.
struct PowerBudget {
    double pbs_dbm = 46.0;
    double sbs_dbm = 46.0;
    double uav_dbm = 30.0;
    int k_channels = 1;

    friend bool operator==(const PowerBudget&, const PowerBudget&) = default;
};

enum class BandwidthScaling {
    per_channel,  // every primary channel has bandwidth W
    per_member,   // a channel serving up to C users has bandwidth C * W
};

enum class Metric {
    rate,      // deterministic max-min rate
    coverage,  // analytic max-min coverage probability
};

struct SearchBox {
    Position lo{0.0, 400.0, 10.0};
    Position hi{1000.0, 400.0, 1000.0};

    friend bool operator==(const SearchBox&, const SearchBox&) = default;
};

struct ScenarioConfig {
    std::uint64_t rng_seed = 0;

    Position pbs{-1500.0, -1500.0, 20.0};
    Position sbs{250.0, 250.0, 20.0};
    Position uav{400.0, 400.0, 80.0};
    std::vector<Position> primary_users;
    std::vector<Position> secondary_users;

    PowerBudget budget;
    double bandwidth_hz = 180e3;
    BandwidthScaling bandwidth_scaling = BandwidthScaling::per_member;
    double carrier_hz = 1.8e9;
    double itc_dbm = 0.0;
    // Whether the interference seen by a primary user includes the mean path
    // attenuation of the link toward it (otherwise only small-scale fading).
    bool itc_pathloss = true;
    LosParams los_backhaul{7.0, 0.2};
    LosParams los_access{13.0, 0.22};
    EtaDb eta_db;
    Impairments impairments;
    double noise_psd_dbm_hz = -174.0;
    double rbar_bps = 0.8e6;
    double region_radius = 500.0;
    Hotspot hotspot;
    int max_cluster_size = 0;  // 0 selects ceil(N / K)
    Metric metric = Metric::rate;
    SearchBox search;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;

    std::size_t n_users() const { return secondary_users.size(); }
    int cluster_capacity() const;
    // Bandwidth of one primary channel in Hz.
    double channel_bandwidth() const;
    // Thermal noise power over one channel in watts.
    double noise_power() const;
    // Primary user whose ITC limits channel k.
    const Position& primary_user(std::size_t k) const;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// n points uniform over the hot-spot disc at ground level (r = R sqrt(u)).
std::vector<Position> generate_hotspot_users(const Hotspot& hotspot, std::size_t n, Rng& rng);

// Throws ConfigError naming the violated invariant.
void validate(const ScenarioConfig& cfg);

// Parses the JSON scenario format; missing fields take their defaults.
ScenarioConfig parse_scenario(const std::string& text);
// Serializes every field, so parse_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const ScenarioConfig& cfg);
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace ccr
