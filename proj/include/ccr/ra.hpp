#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ccr/link.hpp"

// Closed-form max-min fair power and phase-time allocation for one cluster.
namespace ccr::ra {

struct PowerCaps {
    double phi1 = 1.0;  // SBS budget fraction
    double phi2 = 1.0;  // UAV budget fraction
};

struct PhaseSolution {
    double gamma = 0.0;
    std::vector<double> fractions;
};

struct AllocationResult {
    std::vector<double> alpha;
    std::vector<double> beta;
    double lambda = 0.5;
    double gamma_star = 0.0;
    double maxmin_rate = 0.0;  // bits/s
    double energy = 0.0;       // sum alpha + sum beta
};

// min(1, itc / (p g)); a vanishing coupling gain leaves the budget unlimited.
double power_cap(double p, double g, double itc);

// Caps on channel k from the expected gain toward its primary user.
PowerCaps channel_caps(const link::ChannelParams& params, const link::LinkBudget& budget, std::size_t k,
                       std::size_t n_primary);

// alpha_n = I_r g (1 + g)^(C - n), n = 1..C.
std::vector<double> alpha_at(double I_r, std::size_t c, double gamma);
// beta_n = g (I_n + sum_{j>n} beta_j).
std::vector<double> beta_at(std::span<const double> I, double gamma);

PhaseSolution phase1_allocation(double I_r, double phi1, std::size_t c);
// Closed form for C <= 2, bisection on sum beta(g) = phi2 otherwise.
PhaseSolution phase2_allocation(std::span<const double> I, double phi2);

AllocationResult allocate(double I_r, std::span<const double> I_n, const PowerCaps& caps, double bandwidth);
AllocationResult allocate_cluster(const link::ClusterLinkState& s, const PowerCaps& caps, double bandwidth);

// Exhaustive grid search over the budget faces sum alpha = phi1 and
// sum beta = phi2 maximizing the minimum SIDNR; C <= 3.
AllocationResult grid_oracle_allocate(const link::ClusterLinkState& s, const PowerCaps& caps, double bandwidth,
                                      double grid_step);

}  // namespace ccr::ra
