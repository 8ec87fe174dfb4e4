#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ccr/rng.hpp"
#include "ccr/scenario.hpp"

// UAV placement by simulated annealing over a box.
namespace ccr::deploy {

struct SearchSpace {
    SearchBox bounds;
    double step_fraction = 0.05;  // half-width of a move, per axis, as a fraction of the span
    int iterations = 500;
    double t0 = 0.0;              // <= 0 selects the warm-up estimate
    double kappa = 0.95;
    int warmup_samples = 20;
};

struct TraceEntry {
    int iteration = 0;
    Position c;
    double fitness = 0.0;
    bool accepted = false;
};

struct DeploymentResult {
    Position best_c;
    double best_fitness = 0.0;
    double t0 = 0.0;
    std::vector<TraceEntry> trace;
};

using Fitness = std::function<double(const Position&)>;

// Max-min metric of cluster_and_assign at c (deterministic channels).
double fitness(const ScenarioConfig& cfg, const Position& c);

// Uniform step in the box of half-width step * span, reflected at the bounds.
Position neighbor(const Position& c, const SearchSpace& space, Rng& rng);

DeploymentResult simulated_annealing(const Fitness& f, const SearchSpace& space, std::uint64_t seed);
DeploymentResult simulated_annealing(const ScenarioConfig& cfg, const SearchSpace& space);

}  // namespace ccr::deploy
