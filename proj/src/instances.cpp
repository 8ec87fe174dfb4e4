#include "ccr/instances.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace ccr::instances {

double log_uniform(Rng& rng, double lo, double hi) {
    return lo * std::exp(rng.uniform() * std::log(hi / lo));
}

link::PhaseTerms random_terms(Rng& rng) {
    link::PhaseTerms t;
    const double phi = 0.05 * rng.uniform();
    const double zeta = 0.01 * rng.uniform();
    t.est_gain = 1.0 - zeta;
    t.hi_var = phi * phi;
    t.err_power = zeta * (1.0 + t.hi_var);
    t.interf_gain = 1.0;
    t.pbs_interf = log_uniform(rng, 1e-4, 1e-1);
    t.noise = log_uniform(rng, 1e-5, 1e-2);
    return t;
}

link::ClusterLinkState random_cluster(Rng& rng, std::size_t c) {
    const auto broadcast = random_terms(rng);
    std::vector<std::size_t> users(c);
    std::iota(users.begin(), users.end(), 0);
    std::vector<link::PhaseTerms> relay;
    std::vector<double> ell;
    for (std::size_t i = 0; i < c; ++i) {
        relay.push_back(random_terms(rng));
        ell.push_back(log_uniform(rng, 1e-12, 1e-8));
    }
    return link::assemble(broadcast, users, relay, ell);
}

ra::PowerCaps random_caps(Rng& rng) {
    auto one = [&] { return rng.uniform() < 0.5 ? 1.0 : 0.1 + 0.9 * rng.uniform(); };
    ra::PowerCaps caps;
    caps.phi1 = one();
    caps.phi2 = one();
    return caps;
}

assign::CostMatrix random_probability_matrix(Rng& rng, std::size_t n) {
    assign::CostMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.uniform();
    return m;
}

}  // namespace ccr::instances
