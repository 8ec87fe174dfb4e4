#pragma once

#include <complex>

#include "ccr/rng.hpp"
#include "ccr/scenario.hpp"

// Air-to-ground large-scale model and small-scale fading with imperfect CSI.
namespace ccr::channel {

inline constexpr double speed_of_light = 299792458.0;
inline constexpr double est_power_floor = 1e-6;

// Geometry of a link seen from its terrestrial endpoint. The elevation angle
// (degrees) points from that endpoint toward the remote one.
struct LinkGeometry {
    Position terrestrial;
    Position remote;
    double horizontal = 0.0;
    double slant = 0.0;
    double elevation_deg = 0.0;
};

LinkGeometry make_geometry(const Position& terrestrial, const Position& remote);

double los_probability(double elevation_deg, const LosParams& p);
double los_probability(const LinkGeometry& g, const LosParams& p);

// Free-space path loss in dB; throws DomainError for d <= 0 or fc <= 0.
double fspl_db(double slant_distance, double fc);

// LoS/NLoS weighted mean path loss in dB for a given LoS probability.
double mean_path_loss_db(double fspl, double p_los, const EtaDb& eta);
double mean_path_loss_db(const LinkGeometry& g, const LosParams& p, const EtaDb& eta, double fc);

// Linear attenuation as the product of the per-state factors raised to their
// probabilities.
double mean_attenuation(const LinkGeometry& g, const LosParams& p, const EtaDb& eta, double fc);

// Gamma(m, m) sample as -sum_{i<m} ln(U_i) / m with U_i uniform on (0, 1].
double sample_nakagami_power(int m, Rng& rng);

// theta * rho^(-mu); rho is the transmit SNR.
double csi_error_variance(double theta, double mu, double tx_snr);

struct ChannelRealization {
    double ell = 0.0;          // mean attenuation
    double h_true_power = 0.0; // |h|^2 with h = h_est + e
    std::complex<double> h_est;
    double err_var = 0.0;      // zeta
    double est_power = 0.0;    // |h_est|^2
};

struct LinkModel {
    LosParams los;
    EtaDb eta;
    double carrier_hz = 1.8e9;
    int fading_m = 2;
};

// |h_est|^2 ~ max(1 - zeta, floor) * Gamma(m, m), e ~ CN(0, zeta).
// Throws ConfigError when zeta >= 1.
ChannelRealization sample_channel(const LinkGeometry& g, const LinkModel& model, double zeta, Rng& rng);

// Expected small-scale state: |h|^2 = 1, |h_est|^2 = max(1 - zeta, floor), e = 0.
ChannelRealization expected_channel(const LinkGeometry& g, const LinkModel& model, double zeta);

// Power scale applied to the estimated channel for error variance zeta.
double est_power_scale(double zeta);

}  // namespace ccr::channel
