#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ccr/error.hpp"
#include "ccr/instances.hpp"
#include "ccr/ra.hpp"

using namespace ccr;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// Largest gamma on a uniform grid with sum beta(gamma) <= phi.
double scan_phase2(const std::vector<double>& I, double phi, double step) {
    double lo = 0.0;
    for (double g = step; sum(ra::beta_at(I, g)) <= phi; g += step) lo = g;
    return lo;
}

// Sensitivity of the member SIDNRs to moving mass between the two fractions.
template <class F>
double max_slope(const std::vector<double>& v, F&& sidnr) {
    const double h = 1e-7;
    auto moved = v;
    moved[0] += h;
    moved[1] -= h;
    double s = 0.0;
    for (std::size_t n = 0; n < v.size(); ++n) s = std::max(s, std::abs(sidnr(moved, n) - sidnr(v, n)) / h);
    return s;
}

}  // namespace

TEST_SUITE("ra") {
    TEST_CASE("power caps") {
        CHECK(ra::power_cap(2.0, 0.5, 4.0) == 1.0);
        CHECK(ra::power_cap(2.0, 0.5, 0.25) == doctest::Approx(0.25));
        CHECK(ra::power_cap(2.0, 0.0, 0.25) == 1.0);
        CHECK_THROWS_AS(ra::power_cap(0.0, 1.0, 1.0), DomainError);
    }

    TEST_CASE("two-member closed forms") {
        const double ir = 0.03, phi1 = 0.8;
        CHECK(ra::phase1_allocation(ir, phi1, 2).gamma == doctest::Approx(std::sqrt(phi1 / ir + 1.0) - 1.0));
        const std::vector<double> I{0.02, 0.05};
        const double phi2 = 0.6;
        const double g2 =
            (std::sqrt(4.0 * I[1] * phi2 + (I[0] + I[1]) * (I[0] + I[1])) - I[0] - I[1]) / (2.0 * I[1]);
        const auto p2 = ra::phase2_allocation(I, phi2);
        CHECK(p2.gamma == doctest::Approx(g2).epsilon(1e-12));
        CHECK(sum(p2.fractions) == doctest::Approx(phi2).epsilon(1e-12));
    }

    TEST_CASE("single member") {
        const std::vector<double> I{0.04};
        const auto a = ra::allocate(0.01, I, {0.5, 0.2}, 1e6);
        CHECK(a.gamma_star == doctest::Approx(std::min(0.5 / 0.01, 0.2 / 0.04)));
        CHECK(a.lambda == 0.5);
        CHECK(a.maxmin_rate == doctest::Approx(0.5e6 * std::log2(1.0 + a.gamma_star)));
    }

    TEST_CASE("root finder against a fine scan") {
        Rng rng(21, Stream::test);
        for (int t = 0; t < 3; ++t) {
            std::vector<double> I(4);
            for (auto& v : I) v = instances::log_uniform(rng, 0.05, 0.5);
            const double phi = 0.2 + 0.8 * rng.uniform();
            const auto p = ra::phase2_allocation(I, phi);
            CHECK(std::abs(p.gamma - scan_phase2(I, phi, 1e-6)) <= 1e-6);
        }
    }

    TEST_CASE("grid oracle within its resolution bound") {
        const double step = 1e-3;
        for (int i = 0; i < 40; ++i) {
            Rng rng(22, Stream::test, static_cast<std::uint64_t>(i));
            const auto s = instances::random_cluster(rng, 2);
            const auto caps = instances::random_caps(rng);
            const auto cf = ra::allocate_cluster(s, caps, 1.0);
            const auto grid = ra::grid_oracle_allocate(s, caps, 1.0, step);
            const double slope = std::max(
                max_slope(cf.alpha, [&](const std::vector<double>& a, std::size_t n) {
                    return link::broadcast_sidnr(s, a, n);
                }),
                max_slope(cf.beta, [&](const std::vector<double>& b, std::size_t n) {
                    return link::relay_sidnr(s, b, n);
                }));
            CAPTURE(i);
            CHECK(grid.gamma_star <= cf.gamma_star * (1.0 + 1e-12));
            CHECK(cf.gamma_star - grid.gamma_star <= 2.0 * step * slope);
            CHECK(cf.energy <= grid.energy * (1.0 + 1e-12));
        }
        Rng rng(23, Stream::test);
        CHECK_THROWS_AS(ra::grid_oracle_allocate(instances::random_cluster(rng, 4), {}, 1.0, step), DomainError);
    }

    TEST_CASE("no feasible move on the budget face improves a larger cluster") {
        for (int i = 0; i < 20; ++i) {
            Rng rng(24, Stream::test, static_cast<std::uint64_t>(i));
            const auto s = instances::random_cluster(rng, 4);
            const auto a = ra::allocate_cluster(s, instances::random_caps(rng), 1.0);
            for (int t = 0; t < 50; ++t) {
                const auto from = static_cast<std::size_t>(rng.uniform() * 4);
                const auto to = (from + 1 + static_cast<std::size_t>(rng.uniform() * 3)) % 4;
                auto alpha = a.alpha;
                const double d = 1e-3 * alpha[from];
                alpha[from] -= d;
                alpha[to] += d;
                double worst = 1e300;
                for (std::size_t n = 0; n < 4; ++n) worst = std::min(worst, link::broadcast_sidnr(s, alpha, n));
                CHECK(worst <= a.gamma_star * (1.0 + 1e-12));
            }
        }
    }

    TEST_CASE("monotone in interference and budgets") {
        const std::vector<double> I{0.02, 0.03, 0.01};
        const auto base = ra::allocate(0.01, I, {0.7, 0.7}, 1.0);
        auto worse = I;
        worse[1] *= 1.5;
        CHECK(ra::allocate(0.01, worse, {0.7, 0.7}, 1.0).gamma_star <= base.gamma_star);
        CHECK(ra::allocate(0.02, I, {0.7, 0.7}, 1.0).gamma_star <= base.gamma_star);
        CHECK(ra::allocate(0.01, I, {0.9, 0.9}, 1.0).gamma_star >= base.gamma_star);
    }
}
