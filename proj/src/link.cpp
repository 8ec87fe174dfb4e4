#include "ccr/link.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccr/channel.hpp"
#include "ccr/error.hpp"

namespace ccr::link {

double PhaseTerms::aggregate() const {
    return hi_var + (err_power + interf_gain * pbs_interf + noise) / est_gain;
}

double sidnr(const PhaseTerms& t, double v, double sic) {
    const double x = t.est_gain;
    return x * v / (x * sic + x * t.hi_var + t.err_power + t.interf_gain * t.pbs_interf + t.noise);
}

ChannelParams ChannelParams::from(const ScenarioConfig& cfg) {
    ChannelParams p;
    const double k = cfg.budget.k_channels;
    p.p_pbs = dbm_to_watts(cfg.budget.pbs_dbm) / k;
    p.p_sbs = dbm_to_watts(cfg.budget.sbs_dbm) / k;
    p.p_uav = dbm_to_watts(cfg.budget.uav_dbm) / k;
    p.noise = cfg.noise_power();
    const auto& im = cfg.impairments;
    p.zeta_sbs = channel::csi_error_variance(im.csi_theta, im.csi_mu, p.p_sbs / p.noise);
    p.zeta_uav = channel::csi_error_variance(im.csi_theta, im.csi_mu, p.p_uav / p.noise);
    // Fails early when the estimate would carry no channel power.
    channel::est_power_scale(p.zeta_sbs);
    channel::est_power_scale(p.zeta_uav);
    p.phi_serving = im.phi_serving;
    p.phi_pbs = im.phi_pbs;
    p.bandwidth = cfg.channel_bandwidth();
    p.itc = dbm_to_watts(cfg.itc_dbm);
    p.itc_pathloss = cfg.itc_pathloss;
    return p;
}

LinkBudget link_budget(const ScenarioConfig& cfg, const Position& uav) {
    using channel::make_geometry;
    using channel::mean_attenuation;
    const auto fc = cfg.carrier_hz;
    const auto& eta = cfg.eta_db;
    LinkBudget b;
    b.sbs_uav = mean_attenuation(make_geometry(cfg.sbs, uav), cfg.los_backhaul, eta, fc);
    b.pbs_uav = mean_attenuation(make_geometry(cfg.pbs, uav), cfg.los_backhaul, eta, fc);
    for (const auto& su : cfg.secondary_users) {
        b.uav_su.push_back(mean_attenuation(make_geometry(su, uav), cfg.los_access, eta, fc));
        b.pbs_su.push_back(mean_attenuation(make_geometry(su, cfg.pbs), cfg.los_access, eta, fc));
    }
    for (const auto& pu : cfg.primary_users) {
        b.sbs_pu.push_back(mean_attenuation(make_geometry(pu, cfg.sbs), cfg.los_access, eta, fc));
        b.uav_pu.push_back(mean_attenuation(make_geometry(pu, uav), cfg.los_access, eta, fc));
    }
    return b;
}

PhaseTerms phase_terms(double p, double ell, double p_pbs, double ell_pbs, double noise, double zeta,
                       double phi, double phi_pbs, double est_gain, double interf_gain) {
    const double rho = p * ell;
    PhaseTerms t;
    t.est_gain = est_gain;
    t.hi_var = phi * phi;
    t.err_power = zeta * (1.0 + t.hi_var);
    t.interf_gain = interf_gain;
    t.pbs_interf = p_pbs * ell_pbs / rho * (1.0 + phi_pbs * phi_pbs);
    t.noise = noise / rho;
    return t;
}

ClusterLinkState assemble(const PhaseTerms& broadcast, std::span<const std::size_t> users,
                          std::span<const PhaseTerms> relay, std::span<const double> access_ell) {
    if (users.empty()) throw DomainError("cluster must not be empty");
    std::vector<std::size_t> idx(users.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto gain = [&](std::size_t i) { return access_ell[i] * relay[i].est_gain; };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double ga = gain(a), gb = gain(b);
        if (ga != gb) return ga < gb;
        return users[a] < users[b];
    });
    ClusterLinkState s;
    s.broadcast = broadcast;
    s.agg_I_r = broadcast.aggregate();
    for (auto i : idx) {
        s.user_order.push_back(users[i]);
        s.relay.push_back(relay[i]);
        s.agg_I_n.push_back(relay[i].aggregate());
    }
    return s;
}

ClusterLinkState interference_noise_terms(const ChannelParams& p, const LinkBudget& b,
                                          std::span<const std::size_t> members) {
    const double x_s = channel::est_power_scale(p.zeta_sbs);
    const double x_r = channel::est_power_scale(p.zeta_uav);
    const auto bc = phase_terms(p.p_sbs, b.sbs_uav, p.p_pbs, b.pbs_uav, p.noise, p.zeta_sbs, p.phi_serving,
                                p.phi_pbs, x_s, 1.0);
    std::vector<PhaseTerms> relay;
    std::vector<double> ell;
    for (auto u : members) {
        relay.push_back(phase_terms(p.p_uav, b.uav_su.at(u), p.p_pbs, b.pbs_su.at(u), p.noise, p.zeta_uav,
                                    p.phi_serving, p.phi_pbs, x_r, 1.0));
        ell.push_back(b.uav_su[u]);
    }
    return assemble(bc, members, relay, ell);
}

ClusterLinkState interference_noise_terms(const ScenarioConfig& cfg, const Position& uav,
                                          std::span<const std::size_t> members) {
    return interference_noise_terms(ChannelParams::from(cfg), link_budget(cfg, uav), members);
}

namespace {

double tail_sum(std::span<const double> v, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = n + 1; j < v.size(); ++j) s += v[j];
    return s;
}

}  // namespace

double broadcast_sidnr(const ClusterLinkState& s, std::span<const double> alpha, std::size_t n) {
    return sidnr(s.broadcast, alpha[n], tail_sum(alpha, n));
}

double relay_sidnr(const ClusterLinkState& s, std::span<const double> beta, std::size_t n) {
    return sidnr(s.relay.at(n), beta[n], tail_sum(beta, n));
}

double e2e_sidnr(double g_broadcast, double g_relay) { return std::min(g_broadcast, g_relay); }

double user_rate(double g1, double g2, double lambda, double w) {
    return std::min(lambda * w * std::log2(1.0 + g1), (1.0 - lambda) * w * std::log2(1.0 + g2));
}

}  // namespace ccr::link
