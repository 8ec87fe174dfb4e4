#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ccr/coverage.hpp"
#include "ccr/link.hpp"
#include "ccr/ra.hpp"
#include "ccr/scenario.hpp"

// User clustering and channel assignment by iterated linear bottleneck
// assignment, plus an exhaustive oracle for small instances.
namespace ccr::assign {

// Dense row-major matrix.
class CostMatrix {
public:
    CostMatrix() = default;
    CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }
    std::span<const double> row(std::size_t r) const { return {v_.data() + r * cols_, cols_}; }
    std::span<const double> values() const { return v_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> v_;
};

struct LbaResult {
    std::vector<std::size_t> row_to_col;
    double bottleneck = 0.0;
};

// Maximizes the minimum selected entry over perfect matchings of a square
// matrix: binary search over the distinct entries with a Hopcroft-Karp
// feasibility test. Ties resolve to the matching found by row-major scans.
LbaResult lba_solve(const CostMatrix& cost);

// Deterministic SP1 metric of a cluster on a channel for one UAV position:
// the max-min rate, or the minimum member coverage probability.
class ClusterMetric {
public:
    ClusterMetric(const ScenarioConfig& cfg, const Position& uav);

    double operator()(std::size_t k, std::span<const std::size_t> members) const;

    link::ClusterLinkState state(std::span<const std::size_t> members) const;
    ra::AllocationResult allocate(std::size_t k, std::span<const std::size_t> members) const;
    coverage::CoverageModel coverage_model(std::size_t k, std::span<const std::size_t> members) const;

    std::size_t n_users() const { return relay_.size(); }
    std::size_t k_channels() const { return caps_.size(); }
    int capacity() const { return capacity_; }
    Metric metric() const { return metric_; }
    const link::ChannelParams& params() const { return params_; }

private:
    link::ChannelParams params_;
    link::LinkBudget budget_;
    link::PhaseTerms broadcast_;
    std::vector<link::PhaseTerms> relay_;
    std::vector<ra::PowerCaps> caps_;
    int capacity_ = 1;
    Metric metric_ = Metric::rate;
    double rbar_ = 0.0;
    FadingShapes shapes_;
    std::size_t n_primary_ = 1;
};

struct Assignment {
    std::vector<std::vector<std::size_t>> clusters;  // per channel, admission order
    std::vector<double> cluster_metric;              // per channel; empty clusters hold +inf
    double min_metric = 0.0;                         // over nonempty clusters

    // K x N binary matrix chi.
    std::vector<std::vector<int>> chi(std::size_t n_users) const;
};

// ceil(N/K) rounds; each round builds the cost of admitting every unassigned
// user to every cluster and solves an LBA on it.
Assignment cluster_and_assign(const ClusterMetric& metric);
Assignment cluster_and_assign(const ScenarioConfig& cfg, const Position& uav);

// Enumerates every assignment with cluster sizes <= capacity. N <= 12.
Assignment exhaustive_assignment_oracle(const ClusterMetric& metric);

}  // namespace ccr::assign
