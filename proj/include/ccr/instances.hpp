#pragma once

#include <cstddef>

#include "ccr/assign.hpp"
#include "ccr/link.hpp"
#include "ccr/ra.hpp"
#include "ccr/rng.hpp"

// Random problem instances for the validation suites and benchmarks.
namespace ccr::instances {

double log_uniform(Rng& rng, double lo, double hi);

// Per-phase terms with log-uniform interference and noise, small CSI errors
// and HI levels up to 0.05.
link::PhaseTerms random_terms(Rng& rng);

// A cluster of c members ordered by random access attenuations.
link::ClusterLinkState random_cluster(Rng& rng, std::size_t c);

// Each cap is 1 or uniform on [0.1, 1) with equal probability.
ra::PowerCaps random_caps(Rng& rng);

// Entries uniform on [0, 1).
assign::CostMatrix random_probability_matrix(Rng& rng, std::size_t n);

}  // namespace ccr::instances
