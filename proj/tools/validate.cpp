#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ccr/assign.hpp"
#include "ccr/coverage.hpp"
#include "ccr/instances.hpp"
#include "ccr/ra.hpp"
#include "ccr/scenario.hpp"

namespace ccr::cli {
namespace {

double rel_diff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

SuiteResult ra_grid_oracle(const ValidateOptions& opt) {
    const int n = opt.quick ? 30 : 200;
    double worst = 0.0;
    int bad_energy = 0;
    for (int i = 0; i < n; ++i) {
        Rng rng(opt.seed, Stream::instances, static_cast<std::uint64_t>(i));
        const std::size_t c = 1 + i % 3;
        const auto s = instances::random_cluster(rng, c);
        const auto caps = instances::random_caps(rng);
        const auto cf = ra::allocate_cluster(s, caps, 1.0);
        const auto grid = ra::grid_oracle_allocate(s, caps, 1.0, 1e-3);
        worst = std::max(worst, rel_diff(cf.gamma_star, grid.gamma_star));
        if (cf.energy > grid.energy * (1.0 + 1e-12)) ++bad_energy;
    }
    std::ostringstream d;
    d << n << " clusters, worst relative gap " << worst << ", energy violations " << bad_energy;
    return {"ra_grid_oracle", worst <= 5e-3 && bad_energy == 0, d.str()};
}

SuiteResult ra_equalization(const ValidateOptions& opt) {
    const int n = opt.quick ? 200 : 1000;
    double worst = 0.0;
    int unbound = 0;
    for (int i = 0; i < n; ++i) {
        Rng rng(opt.seed, Stream::instances, 100000 + static_cast<std::uint64_t>(i));
        const std::size_t c = 1 + i % 6;
        const auto s = instances::random_cluster(rng, c);
        const auto caps = instances::random_caps(rng);
        const auto a = ra::allocate_cluster(s, caps, 1.0);
        for (std::size_t k = 0; k < c; ++k) {
            worst = std::max(worst, rel_diff(link::broadcast_sidnr(s, a.alpha, k), a.gamma_star));
            worst = std::max(worst, rel_diff(link::relay_sidnr(s, a.beta, k), a.gamma_star));
        }
        const double sa = std::accumulate(a.alpha.begin(), a.alpha.end(), 0.0);
        const double sb = std::accumulate(a.beta.begin(), a.beta.end(), 0.0);
        if (std::abs(sa - caps.phi1) > 1e-12 && std::abs(sb - caps.phi2) > 1e-12) ++unbound;
    }
    std::ostringstream d;
    d << n << " clusters, worst SIDNR spread " << worst << ", clusters without a binding budget " << unbound;
    return {"ra_equalization", worst <= 1e-9 && unbound == 0, d.str()};
}

double brute_force_bottleneck(const assign::CostMatrix& m) {
    std::vector<std::size_t> p(m.rows());
    std::iota(p.begin(), p.end(), 0);
    double best = -1.0;
    do {
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < p.size(); ++r) b = std::min(b, m(r, p[r]));
        best = std::max(best, b);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

SuiteResult lba_exhaustive(const ValidateOptions& opt) {
    const int n = opt.quick ? 50 : 500;
    int mismatches = 0;
    for (int i = 0; i < n; ++i) {
        Rng rng(opt.seed, Stream::instances, 200000 + static_cast<std::uint64_t>(i));
        const auto m = instances::random_probability_matrix(rng, 8);
        const auto r = assign::lba_solve(m);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t row = 0; row < 8; ++row) b = std::min(b, m(row, r.row_to_col[row]));
        if (b != r.bottleneck || b != brute_force_bottleneck(m)) ++mismatches;
    }
    std::ostringstream d;
    d << n << " random 8x8 matrices, mismatches " << mismatches;
    return {"lba_exhaustive", mismatches == 0, d.str()};
}

ScenarioConfig random_assignment_instance(std::uint64_t seed, std::uint64_t index, Position& uav) {
    Rng rng(seed, Stream::instances, 300000 + index);
    ScenarioConfig cfg;
    cfg.rng_seed = seed + index;
    cfg.budget.k_channels = 1 + static_cast<int>(rng.uniform() * 4);
    const auto n = static_cast<std::size_t>(cfg.budget.k_channels) +
                   static_cast<std::size_t>(rng.uniform() * (9 - cfg.budget.k_channels));
    cfg.primary_users = {{1000.0, 1000.0, 0.0}, {-200.0, 900.0, 0.0}};
    Rng users(cfg.rng_seed, Stream::users);
    cfg.secondary_users = generate_hotspot_users(cfg.hotspot, n, users);
    uav = {300.0 + 200.0 * rng.uniform(), 400.0, 40.0 + 160.0 * rng.uniform()};
    return cfg;
}

SuiteResult assignment_oracle(const ValidateOptions& opt) {
    const int n = opt.quick ? 15 : 50;
    int mismatches = 0;
    for (int i = 0; i < n; ++i) {
        Position uav;
        const auto cfg = random_assignment_instance(opt.seed, static_cast<std::uint64_t>(i), uav);
        const assign::ClusterMetric metric(cfg, uav);
        const auto heuristic = assign::cluster_and_assign(metric);
        const auto exact = assign::exhaustive_assignment_oracle(metric);
        if (rel_diff(heuristic.min_metric, exact.min_metric) > 1e-12) ++mismatches;
    }
    std::ostringstream d;
    d << n << " instances with K <= 4, N <= 8, mismatches " << mismatches;
    return {"assignment_oracle", mismatches == 0, d.str()};
}

SuiteResult coverage_monte_carlo(const ValidateOptions& opt) {
    const std::size_t trials = opt.quick ? 100000 : 1000000;
    double worst = 0.0;
    int failures = 0;
    int cases = 0;
    for (int m : {1, 2, 3}) {
        for (double phi : {0.0, 0.05}) {
            for (double theta : {0.0, 0.01}) {
                ScenarioConfig cfg;
                cfg.rng_seed = opt.seed;
                cfg.primary_users = {{1000, 1000, 0}};
                cfg.secondary_users = {{500, 400, 0}, {450, 400, 0}};
                cfg.budget = {0.0, 4.0, 4.0, 1};
                cfg.itc_pathloss = false;
                cfg.impairments.fading = {m, m, m};
                cfg.impairments.phi_serving = cfg.impairments.phi_pbs = phi;
                cfg.impairments.csi_theta = theta;
                const Position uav{380, 400, 80};
                const assign::ClusterMetric metric(cfg, uav);
                const std::vector<std::size_t> members{0, 1};
                const auto a = metric.allocate(0, members);
                const auto model = metric.coverage_model(0, members);
                std::vector<double> rbars;
                for (double f : {0.2, 0.4, 0.6, 0.8, 1.0}) rbars.push_back(f * a.maxmin_rate);
                const auto mc = coverage::monte_carlo_coverage(model, a, rbars, trials, opt.seed);
                for (std::size_t t = 0; t < rbars.size(); ++t) {
                    const auto an = coverage::coverage_probability(model, a, rbars[t]);
                    for (std::size_t k = 0; k < an.size(); ++k) {
                        const double dev = std::abs(an[k].p_e2e - mc[t][k].p_e2e);
                        const double tol = std::max(0.005, 3.0 * mc[t][k].mc_stderr.value_or(0.0));
                        worst = std::max(worst, dev);
                        if (dev > tol) ++failures;
                        ++cases;
                    }
                }
            }
        }
    }
    std::ostringstream d;
    d << cases << " comparisons at " << trials << " trials, worst deviation " << worst << ", failures "
      << failures;
    return {"coverage_monte_carlo", failures == 0, d.str()};
}

}  // namespace

std::vector<SuiteResult> run_validation(const ValidateOptions& opt) {
    return {ra_grid_oracle(opt), ra_equalization(opt), lba_exhaustive(opt), assignment_oracle(opt),
            coverage_monte_carlo(opt)};
}

}  // namespace ccr::cli
