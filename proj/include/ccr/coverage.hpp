#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ccr/link.hpp"
#include "ccr/ra.hpp"
#include "ccr/scenario.hpp"

// Coverage probability of cluster members: analytic CDF over Nakagami-m
// fading with an interference-temperature cap, and a Monte Carlo estimator.
namespace ccr::coverage {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct Thresholds {
    double broadcast = 0.0;
    double relay = 0.0;
};

// 2^(R / (lambda W)) - 1 and 2^(R / ((1 - lambda) W)) - 1. A phase with no
// time gets an infinite threshold (certain outage unless R = 0).
Thresholds sidnr_thresholds(double rbar, double lambda, double w);

// Normalized CDF terms for one receiver and threshold. X, Y, Z are unit-mean
// Gamma variates with integer shapes x, y, z.
struct CdfParams {
    int x = 2;
    int y = 2;
    int z = 2;
    double A = 0.0;       // v - gbar (sic + phi^2)
    double calE = 0.0;
    double calS = 0.0;
    double calI = 0.0;
    double calV = 0.0;
    double calU = 0.0;
    double Lambda = infinity;  // ITC / mean interference at the primary user
};

// One receiver in one phase: expected-channel terms (est_gain holds the mean
// of |h_est|^2), allocated fraction v and SIC interference.
struct PhaseInputs {
    link::PhaseTerms terms;
    double v = 0.0;
    double sic = 0.0;
    double Lambda = infinity;
    FadingShapes shapes;
};

// Fills the ratio terms; A <= 0 is returned as-is for the caller to handle.
CdfParams cdf_params(const PhaseInputs& in, double gbar);

// Pr[X < Z I + E + S, Y < Lambda] in closed form. Requires A > 0.
double cdf_delta_term(const CdfParams& p);
// Pr[X < Z Y U + Y V + E, Y > Lambda] by quadrature over Z. Requires A > 0.
double cdf_upsilon_term(const CdfParams& p);
// Delta + Upsilon clipped to [0, 1]; 1 when the threshold is unreachable.
double sidnr_cdf(const PhaseInputs& in, double gbar);

enum class Method { analytic, monte_carlo };

struct CoverageResult {
    double p_phase1 = 0.0;
    double p_phase2 = 0.0;
    double p_e2e = 0.0;
    Method method = Method::analytic;
    std::optional<double> mc_stderr;
};

// A cluster with its ITC coupling. itc_gain_* is the mean interference power
// at the primary user per unit of allocated power fraction.
struct CoverageModel {
    link::ClusterLinkState state;
    FadingShapes shapes;
    double itc = infinity;  // watts
    double itc_gain_sbs = 0.0;
    double itc_gain_uav = 0.0;
    double bandwidth = 0.0;
};

CoverageModel make_model(const ScenarioConfig& cfg, const link::ChannelParams& params,
                         const link::LinkBudget& budget, link::ClusterLinkState state, std::size_t k);

// Lambda of each phase for the given allocation.
std::pair<double, double> itc_lambdas(const CoverageModel& m, const ra::AllocationResult& a);

// Per-member coverage in decoding order.
std::vector<CoverageResult> coverage_probability(const CoverageModel& m, const ra::AllocationResult& a,
                                                 double rbar);
// Minimum member end-to-end coverage.
double cluster_coverage(const CoverageModel& m, const ra::AllocationResult& a, double rbar);

// Monte Carlo estimate for several thresholds at once: result[t][n] is member
// n at threshold t. Trials are split in fixed blocks with their own streams,
// so the estimate does not depend on the worker count.
std::vector<std::vector<CoverageResult>> monte_carlo_coverage(const CoverageModel& m,
                                                              const ra::AllocationResult& a,
                                                              std::span<const double> rbars, std::size_t trials,
                                                              std::uint64_t seed);

}  // namespace ccr::coverage
