#include "ccr/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "ccr/channel.hpp"
#include "ccr/error.hpp"

namespace ccr::assign {
namespace {

constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
constexpr double inf = std::numeric_limits<double>::infinity();

// Hopcroft-Karp on the graph {(r, c) : cost(r, c) >= t}.
class ThresholdMatcher {
public:
    explicit ThresholdMatcher(const CostMatrix& m) : m_(m), n_(m.rows()) {}

    bool perfect(double t, std::vector<std::size_t>& row_to_col) {
        t_ = t;
        match_r_.assign(n_, none);
        match_c_.assign(n_, none);
        std::size_t matched = 0;
        // Greedy row-major start.
        for (std::size_t r = 0; r < n_; ++r) {
            const auto row = m_.row(r);
            for (std::size_t c = 0; c < n_; ++c) {
                if (row[c] >= t_ && match_c_[c] == none) {
                    match_r_[r] = c;
                    match_c_[c] = r;
                    ++matched;
                    break;
                }
            }
        }
        while (matched < n_ && bfs()) {
            next_.assign(n_, 0);
            for (std::size_t r = 0; r < n_; ++r)
                if (match_r_[r] == none && dfs(r)) ++matched;
        }
        if (matched < n_) return false;
        row_to_col = match_r_;
        return true;
    }

private:
    bool bfs() {
        dist_.assign(n_, none);
        std::queue<std::size_t> q;
        for (std::size_t r = 0; r < n_; ++r) {
            if (match_r_[r] == none) {
                dist_[r] = 0;
                q.push(r);
            }
        }
        bool found = false;
        while (!q.empty()) {
            const auto r = q.front();
            q.pop();
            const auto row = m_.row(r);
            for (std::size_t c = 0; c < n_; ++c) {
                if (row[c] < t_) continue;
                const auto r2 = match_c_[c];
                if (r2 == none) {
                    found = true;
                } else if (dist_[r2] == none) {
                    dist_[r2] = dist_[r] + 1;
                    q.push(r2);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t r) {
        const auto row = m_.row(r);
        for (auto& c = next_[r]; c < n_; ++c) {
            if (row[c] < t_) continue;
            const auto r2 = match_c_[c];
            if (r2 == none || (dist_[r2] == dist_[r] + 1 && dfs(r2))) {
                match_r_[r] = c;
                match_c_[c] = r;
                ++c;
                return true;
            }
        }
        dist_[r] = none;
        return false;
    }

    const CostMatrix& m_;
    std::size_t n_;
    double t_ = 0.0;
    std::vector<std::size_t> match_r_, match_c_, dist_, next_;
};

}  // namespace

LbaResult lba_solve(const CostMatrix& cost) {
    const auto n = cost.rows();
    if (n == 0 || cost.cols() != n) throw DomainError("lba: matrix must be square and nonempty");
    std::vector<double> values(cost.values().begin(), cost.values().end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    ThresholdMatcher matcher(cost);
    LbaResult res;
    // values[lo] is always feasible (every entry qualifies); search for the
    // largest feasible index.
    std::size_t lo = 0, hi = values.size();
    bool have = false;
    while (hi - lo > 1) {
        const auto mid = lo + (hi - lo) / 2;
        std::vector<std::size_t> m;
        if (matcher.perfect(values[mid], m)) {
            lo = mid;
            res.row_to_col = std::move(m);
            have = true;
        } else {
            hi = mid;
        }
    }
    if (!have) matcher.perfect(values[lo], res.row_to_col);
    res.bottleneck = values[lo];
    return res;
}

ClusterMetric::ClusterMetric(const ScenarioConfig& cfg, const Position& uav)
    : params_(link::ChannelParams::from(cfg)),
      budget_(link::link_budget(cfg, uav)),
      capacity_(cfg.cluster_capacity()),
      metric_(cfg.metric),
      rbar_(cfg.rbar_bps),
      shapes_(cfg.impairments.fading),
      n_primary_(cfg.primary_users.size()) {
    const auto& p = params_;
    const double x_s = channel::est_power_scale(p.zeta_sbs);
    const double x_r = channel::est_power_scale(p.zeta_uav);
    broadcast_ = link::phase_terms(p.p_sbs, budget_.sbs_uav, p.p_pbs, budget_.pbs_uav, p.noise, p.zeta_sbs,
                                   p.phi_serving, p.phi_pbs, x_s, 1.0);
    for (std::size_t u = 0; u < cfg.n_users(); ++u)
        relay_.push_back(link::phase_terms(p.p_uav, budget_.uav_su[u], p.p_pbs, budget_.pbs_su[u], p.noise,
                                           p.zeta_uav, p.phi_serving, p.phi_pbs, x_r, 1.0));
    for (int k = 0; k < cfg.budget.k_channels; ++k)
        caps_.push_back(ra::channel_caps(params_, budget_, static_cast<std::size_t>(k), n_primary_));
}

link::ClusterLinkState ClusterMetric::state(std::span<const std::size_t> members) const {
    std::vector<link::PhaseTerms> relay;
    std::vector<double> ell;
    relay.reserve(members.size());
    ell.reserve(members.size());
    for (auto u : members) {
        relay.push_back(relay_.at(u));
        ell.push_back(budget_.uav_su[u]);
    }
    return link::assemble(broadcast_, members, relay, ell);
}

ra::AllocationResult ClusterMetric::allocate(std::size_t k, std::span<const std::size_t> members) const {
    return ra::allocate_cluster(state(members), caps_.at(k), params_.bandwidth);
}

coverage::CoverageModel ClusterMetric::coverage_model(std::size_t k, std::span<const std::size_t> members) const {
    coverage::CoverageModel m;
    m.state = state(members);
    m.shapes = shapes_;
    m.itc = params_.itc;
    const auto pu = k % n_primary_;
    m.itc_gain_sbs = params_.p_sbs * (params_.itc_pathloss ? budget_.sbs_pu.at(pu) : 1.0);
    m.itc_gain_uav = params_.p_uav * (params_.itc_pathloss ? budget_.uav_pu.at(pu) : 1.0);
    m.bandwidth = params_.bandwidth;
    return m;
}

double ClusterMetric::operator()(std::size_t k, std::span<const std::size_t> members) const {
    if (metric_ == Metric::rate) return allocate(k, members).maxmin_rate;
    const auto model = coverage_model(k, members);
    return coverage::cluster_coverage(model, ra::allocate_cluster(model.state, caps_.at(k), params_.bandwidth),
                                      rbar_);
}

std::vector<std::vector<int>> Assignment::chi(std::size_t n_users) const {
    std::vector<std::vector<int>> x(clusters.size(), std::vector<int>(n_users, 0));
    for (std::size_t k = 0; k < clusters.size(); ++k)
        for (auto u : clusters[k]) x[k][u] = 1;
    return x;
}

namespace {

double min_over_clusters(const std::vector<std::vector<std::size_t>>& clusters, const std::vector<double>& m) {
    double worst = inf;
    for (std::size_t k = 0; k < clusters.size(); ++k)
        if (!clusters[k].empty()) worst = std::min(worst, m[k]);
    return worst;
}

}  // namespace

Assignment cluster_and_assign(const ClusterMetric& metric) {
    const auto n = metric.n_users();
    const auto k_count = metric.k_channels();
    Assignment a;
    a.clusters.assign(k_count, {});
    a.cluster_metric.assign(k_count, inf);
    std::vector<bool> assigned(n, false);
    const auto rounds = (n + k_count - 1) / k_count;

    for (std::size_t round = 0; round < rounds; ++round) {
        std::vector<std::size_t> free_users;
        for (std::size_t u = 0; u < n; ++u)
            if (!assigned[u]) free_users.push_back(u);
        if (free_users.empty()) break;
        // Rows are channels, columns unassigned users; the shorter side is
        // padded with dummies whose cost never binds the bottleneck.
        const auto dim = std::max(k_count, free_users.size());
        CostMatrix cost(dim, dim, inf);
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < k_count; ++k) {
            for (std::size_t j = 0; j < free_users.size(); ++j) {
                members = a.clusters[k];
                members.push_back(free_users[j]);
                cost(k, j) = metric(k, members);
            }
        }
        const auto sol = lba_solve(cost);
        for (std::size_t k = 0; k < k_count; ++k) {
            const auto j = sol.row_to_col[k];
            if (j >= free_users.size()) continue;
            a.clusters[k].push_back(free_users[j]);
            a.cluster_metric[k] = cost(k, j);
            assigned[free_users[j]] = true;
        }
    }
    a.min_metric = min_over_clusters(a.clusters, a.cluster_metric);
    return a;
}

Assignment cluster_and_assign(const ScenarioConfig& cfg, const Position& uav) {
    return cluster_and_assign(ClusterMetric(cfg, uav));
}

Assignment exhaustive_assignment_oracle(const ClusterMetric& metric) {
    const auto n = metric.n_users();
    const auto k_count = metric.k_channels();
    if (n > 12) throw DomainError("exhaustive oracle supports at most 12 users");
    const auto cap = static_cast<std::size_t>(metric.capacity());
    const std::size_t masks = std::size_t{1} << n;
    std::vector<double> memo(k_count * masks, std::numeric_limits<double>::quiet_NaN());

    auto cluster_value = [&](std::size_t k, std::size_t mask) {
        double& slot = memo[k * masks + mask];
        if (std::isnan(slot)) {
            std::vector<std::size_t> members;
            for (std::size_t u = 0; u < n; ++u)
                if (mask >> u & 1) members.push_back(u);
            slot = metric(k, members);
        }
        return slot;
    };

    std::vector<std::size_t> mask(k_count, 0), size(k_count, 0);
    std::vector<std::size_t> best_mask;
    double best = -inf;
    // Depth-first over users; each user joins one channel with spare capacity.
    auto recurse = [&](auto&& self, std::size_t u) -> void {
        if (u == n) {
            double worst = inf;
            for (std::size_t k = 0; k < k_count; ++k)
                if (mask[k]) worst = std::min(worst, cluster_value(k, mask[k]));
            if (worst > best) {
                best = worst;
                best_mask = mask;
            }
            return;
        }
        for (std::size_t k = 0; k < k_count; ++k) {
            if (size[k] == cap) continue;
            mask[k] |= std::size_t{1} << u;
            ++size[k];
            self(self, u + 1);
            mask[k] &= ~(std::size_t{1} << u);
            --size[k];
        }
    };
    recurse(recurse, 0);

    Assignment a;
    a.clusters.assign(k_count, {});
    a.cluster_metric.assign(k_count, inf);
    for (std::size_t k = 0; k < k_count; ++k) {
        for (std::size_t u = 0; u < n; ++u)
            if (best_mask[k] >> u & 1) a.clusters[k].push_back(u);
        if (best_mask[k]) a.cluster_metric[k] = cluster_value(k, best_mask[k]);
    }
    a.min_metric = best;
    return a;
}

}  // namespace ccr::assign
