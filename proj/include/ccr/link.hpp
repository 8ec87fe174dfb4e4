#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ccr/scenario.hpp"

// Per-phase SIDNR terms and their assembly for a NOMA cluster.
namespace ccr::link {

// Denominator terms of one receiver in one phase, normalized by the serving
// received power. SIDNR = X v / (X sic + X hi_var + E + Z I_p + noise).
struct PhaseTerms {
    double est_gain = 1.0;     // X, |h_est|^2 of the serving link
    double err_power = 0.0;    // E = zeta (1 + phi^2)
    double hi_var = 0.0;       // phi^2
    double interf_gain = 1.0;  // Z, |h|^2 of the PBS link
    double pbs_interf = 0.0;   // I_p
    double noise = 0.0;        // normalized thermal noise

    // Interference-plus-noise term hi_var + (E + Z I_p + noise) / X.
    double aggregate() const;
};

double sidnr(const PhaseTerms& t, double v, double sic);

// Scenario constants shared by every channel.
struct ChannelParams {
    double p_pbs = 0.0;  // watts per channel
    double p_sbs = 0.0;
    double p_uav = 0.0;
    double noise = 0.0;  // thermal noise power per channel, watts
    double zeta_sbs = 0.0;
    double zeta_uav = 0.0;
    double phi_serving = 0.0;
    double phi_pbs = 0.0;
    double bandwidth = 0.0;  // Hz per channel
    double itc = 0.0;        // watts
    bool itc_pathloss = true;

    static ChannelParams from(const ScenarioConfig& cfg);
};

// Mean attenuations for one UAV position.
struct LinkBudget {
    double sbs_uav = 0.0;
    double pbs_uav = 0.0;
    std::vector<double> uav_su;  // per secondary user
    std::vector<double> pbs_su;
    std::vector<double> sbs_pu;  // per primary user
    std::vector<double> uav_pu;
};

LinkBudget link_budget(const ScenarioConfig& cfg, const Position& uav);

// Terms for a link with per-channel transmit power p over attenuation ell,
// interfered by the PBS with per-channel power p_pbs over ell_pbs.
PhaseTerms phase_terms(double p, double ell, double p_pbs, double ell_pbs, double noise, double zeta,
                       double phi, double phi_pbs, double est_gain, double interf_gain);

struct ClusterLinkState {
    PhaseTerms broadcast;                // SBS -> UAV
    std::vector<PhaseTerms> relay;       // UAV -> member, in decoding order
    std::vector<std::size_t> user_order; // user ids, weakest first
    double agg_I_r = 0.0;
    std::vector<double> agg_I_n;

    std::size_t size() const { return user_order.size(); }
};

// Assembles a cluster from per-phase terms; orders members by ascending
// ell * |h_est|^2 of the access link, ties by user id.
ClusterLinkState assemble(const PhaseTerms& broadcast, std::span<const std::size_t> users,
                          std::span<const PhaseTerms> relay, std::span<const double> access_ell);

// Expected-channel cluster state (|h|^2 = 1, |h_est|^2 = 1 - zeta).
ClusterLinkState interference_noise_terms(const ChannelParams& params, const LinkBudget& budget,
                                          std::span<const std::size_t> members);
ClusterLinkState interference_noise_terms(const ScenarioConfig& cfg, const Position& uav,
                                          std::span<const std::size_t> members);

// SIDNR of the n-th member (decoding order) in each phase.
double broadcast_sidnr(const ClusterLinkState& s, std::span<const double> alpha, std::size_t n);
double relay_sidnr(const ClusterLinkState& s, std::span<const double> beta, std::size_t n);

double e2e_sidnr(double g_broadcast, double g_relay);
// min(lambda W log2(1 + g1), (1 - lambda) W log2(1 + g2)).
double user_rate(double g1, double g2, double lambda, double w);

}  // namespace ccr::link
