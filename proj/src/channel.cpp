#include "ccr/channel.hpp"

#include <cmath>
#include <numbers>

#include "ccr/error.hpp"

namespace ccr::channel {

LinkGeometry make_geometry(const Position& terrestrial, const Position& remote) {
    LinkGeometry g{terrestrial, remote};
    g.horizontal = horizontal_distance(terrestrial, remote);
    g.slant = slant_distance(terrestrial, remote);
    g.elevation_deg = std::atan2(remote.z - terrestrial.z, g.horizontal) * 180.0 / std::numbers::pi;
    return g;
}

double los_probability(double elevation_deg, const LosParams& p) {
    return 1.0 / (1.0 + p.a * std::exp(-p.b * (elevation_deg - p.a)));
}

double los_probability(const LinkGeometry& g, const LosParams& p) {
    return los_probability(g.elevation_deg, p);
}

double fspl_db(double d, double fc) {
    if (!(d > 0.0)) throw DomainError("fspl: distance must be > 0");
    if (!(fc > 0.0)) throw DomainError("fspl: carrier frequency must be > 0");
    return 20.0 * std::log10(d) + 20.0 * std::log10(fc) + 20.0 * std::log10(4.0 * std::numbers::pi / speed_of_light);
}

double mean_path_loss_db(double fspl, double p_los, const EtaDb& eta) {
    return p_los * (fspl + eta.los) + (1.0 - p_los) * (fspl + eta.nlos);
}

double mean_path_loss_db(const LinkGeometry& g, const LosParams& p, const EtaDb& eta, double fc) {
    return mean_path_loss_db(fspl_db(g.slant, fc), los_probability(g, p), eta);
}

double mean_attenuation(const LinkGeometry& g, const LosParams& p, const EtaDb& eta, double fc) {
    const double fspl = std::pow(10.0, fspl_db(g.slant, fc) / 10.0);
    const double u = los_probability(g, p);
    const double los = std::pow(10.0, eta.los / 10.0) * fspl;
    const double nlos = std::pow(10.0, eta.nlos / 10.0) * fspl;
    return std::pow(los, -u) * std::pow(nlos, -(1.0 - u));
}

double sample_nakagami_power(int m, Rng& rng) {
    if (m < 1) throw DomainError("nakagami: m must be a positive integer");
    double s = 0.0;
    for (int i = 0; i < m; ++i) s -= std::log(rng.uniform_pos());
    return s / m;
}

double csi_error_variance(double theta, double mu, double tx_snr) {
    if (!(tx_snr > 0.0)) throw DomainError("csi error: transmit SNR must be > 0");
    return theta * std::pow(tx_snr, -mu);
}

double est_power_scale(double zeta) {
    if (zeta >= 1.0) throw ConfigError("channel estimation error variance must be below 1");
    return std::max(1.0 - zeta, est_power_floor);
}

ChannelRealization sample_channel(const LinkGeometry& g, const LinkModel& model, double zeta, Rng& rng) {
    const double scale = est_power_scale(zeta);
    ChannelRealization r;
    r.ell = mean_attenuation(g, model.los, model.eta, model.carrier_hz);
    r.err_var = zeta;
    r.est_power = scale * sample_nakagami_power(model.fading_m, rng);
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    r.h_est = std::polar(std::sqrt(r.est_power), phase);
    // Box-Muller pair for the circularly symmetric error term.
    const double rad = std::sqrt(-std::log(rng.uniform_pos()) * zeta);
    const double ang = 2.0 * std::numbers::pi * rng.uniform();
    r.h_true_power = std::norm(r.h_est + std::polar(rad, ang));
    return r;
}

ChannelRealization expected_channel(const LinkGeometry& g, const LinkModel& model, double zeta) {
    ChannelRealization r;
    r.ell = mean_attenuation(g, model.los, model.eta, model.carrier_hz);
    r.err_var = zeta;
    r.est_power = est_power_scale(zeta);
    r.h_est = std::sqrt(r.est_power);
    r.h_true_power = 1.0;
    return r;
}

}  // namespace ccr::channel
