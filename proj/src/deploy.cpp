#include "ccr/deploy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccr/assign.hpp"
#include "ccr/error.hpp"

namespace ccr::deploy {

double fitness(const ScenarioConfig& cfg, const Position& c) {
    return assign::cluster_and_assign(cfg, c).min_metric;
}

namespace {

double reflect(double v, double lo, double hi) {
    if (hi <= lo) return lo;
    const double span = hi - lo;
    // Fold into [lo, hi] for steps that may exceed the span.
    double t = std::fmod(v - lo, 2.0 * span);
    if (t < 0.0) t += 2.0 * span;
    return t <= span ? lo + t : hi - (t - span);
}

double move(double v, double lo, double hi, double frac, Rng& rng) {
    const double half = frac * (hi - lo);
    return reflect(v + (2.0 * rng.uniform() - 1.0) * half, lo, hi);
}

Position uniform_in(const SearchBox& b, Rng& rng) {
    return {b.lo.x + rng.uniform() * (b.hi.x - b.lo.x), b.lo.y + rng.uniform() * (b.hi.y - b.lo.y),
            b.lo.z + rng.uniform() * (b.hi.z - b.lo.z)};
}

void check(const SearchSpace& s) {
    const auto& b = s.bounds;
    if (b.lo.x > b.hi.x || b.lo.y > b.hi.y || b.lo.z > b.hi.z) throw DomainError("search box is inverted");
    if (!(s.kappa > 0.0 && s.kappa < 1.0)) throw DomainError("cooling factor must lie in (0, 1)");
    if (s.iterations < 1) throw DomainError("iterations must be >= 1");
    if (!(s.step_fraction > 0.0)) throw DomainError("step must be > 0");
}

}  // namespace

Position neighbor(const Position& c, const SearchSpace& space, Rng& rng) {
    const auto& b = space.bounds;
    const double f = space.step_fraction;
    const double x = move(c.x, b.lo.x, b.hi.x, f, rng);
    const double y = move(c.y, b.lo.y, b.hi.y, f, rng);
    const double z = move(c.z, b.lo.z, b.hi.z, f, rng);
    return {x, y, z};
}

DeploymentResult simulated_annealing(const Fitness& f, const SearchSpace& space, std::uint64_t seed) {
    check(space);
    Rng rng(seed, Stream::annealing);
    DeploymentResult res;

    double t0 = space.t0;
    if (t0 <= 0.0) {
        std::vector<double> sample;
        for (int i = 0; i < space.warmup_samples; ++i) sample.push_back(f(uniform_in(space.bounds, rng)));
        const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / sample.size();
        double var = 0.0;
        for (double v : sample) var += (v - mean) * (v - mean);
        t0 = std::sqrt(var / sample.size());
        // A flat landscape leaves no scale; any positive temperature will do.
        if (!(t0 > 0.0)) t0 = 1.0;
    }
    res.t0 = t0;

    Position c = uniform_in(space.bounds, rng);
    double current = f(c);
    res.best_c = c;
    res.best_fitness = current;
    res.trace.push_back({0, c, current, true});

    double temp = t0;
    for (int t = 1; t <= space.iterations; ++t) {
        temp *= space.kappa;
        const Position cand = neighbor(c, space, rng);
        const double fc = f(cand);
        bool accept = fc >= current;
        if (!accept) accept = std::exp((fc - current) / temp) > rng.uniform();
        if (accept) {
            c = cand;
            current = fc;
            if (fc > res.best_fitness) {
                res.best_fitness = fc;
                res.best_c = cand;
            }
        }
        res.trace.push_back({t, cand, fc, accept});
    }
    return res;
}

DeploymentResult simulated_annealing(const ScenarioConfig& cfg, const SearchSpace& space) {
    return simulated_annealing([&cfg](const Position& c) { return fitness(cfg, c); }, space, cfg.rng_seed);
}

}  // namespace ccr::deploy
