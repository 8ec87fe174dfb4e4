#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ccr/assign.hpp"
#include "ccr/coverage.hpp"
#include "ccr/error.hpp"

using namespace ccr;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Pr[SIDNR < g] by integrating the conditional CDF of the serving gain over
// the PU-link gain Y (ITC back-off min(1, Lambda / Y)) and the PBS gain Z.
double cdf_oracle(const coverage::PhaseInputs& in, double g) {
    using boost::math::quadrature::gauss_kronrod;
    const auto& t = in.terms;
    const double A = in.v - g * (in.sic + t.hi_var);
    const int x = in.shapes.serving;
    const boost::math::gamma_distribution<> fy(in.shapes.pu, 1.0 / in.shapes.pu);
    const boost::math::gamma_distribution<> fz(in.shapes.pbs, 1.0 / in.shapes.pbs);
    auto given_s = [&](double s) {
        auto over_z = [&](double z) {
            const double thr = g * (s * t.err_power + z * t.pbs_interf + t.noise) / (s * t.est_gain * A);
            return boost::math::pdf(fz, z) * boost::math::gamma_p(x, x * thr);
        };
        return gauss_kronrod<double, 61>::integrate(over_z, 0.0, inf, 15, 1e-12);
    };
    if (!std::isfinite(in.Lambda)) return given_s(1.0);
    const double below = boost::math::cdf(fy, in.Lambda) * given_s(1.0);
    auto over_y = [&](double y) { return boost::math::pdf(fy, y) * given_s(in.Lambda / y); };
    return below + gauss_kronrod<double, 31>::integrate(over_y, in.Lambda, inf, 10, 1e-10);
}

coverage::PhaseInputs inputs(int m, double lambda) {
    coverage::PhaseInputs in;
    in.terms.est_gain = 0.99;
    in.terms.err_power = 0.01 * (1.0 + 0.05 * 0.05);
    in.terms.hi_var = 0.05 * 0.05;
    in.terms.pbs_interf = 0.08;
    in.terms.noise = 0.05;
    in.v = 0.7;
    in.sic = 0.2;
    in.Lambda = lambda;
    in.shapes = {m, m + 1, m};
    return in;
}

}  // namespace

TEST_SUITE("coverage") {
    TEST_CASE("thresholds") {
        const auto t = coverage::sidnr_thresholds(1e6, 0.5, 1e6);
        CHECK(t.broadcast == doctest::Approx(3.0));
        CHECK(t.relay == doctest::Approx(3.0));
        CHECK(coverage::sidnr_thresholds(1e6, 1.0, 1e6).relay == inf);
        CHECK(coverage::sidnr_thresholds(0.0, 1.0, 1e6).relay == 0.0);
        CHECK_THROWS_AS(coverage::sidnr_thresholds(1e6, 1.5, 1e6), DomainError);
    }

    TEST_CASE("CDF matches the integration oracle") {
        for (int m : {1, 2, 3}) {
            for (double lambda : {inf, 3.0, 0.8, 0.2}) {
                for (double g : {0.3, 1.0, 2.0}) {
                    const auto in = inputs(m, lambda);
                    const auto p = coverage::cdf_params(in, g);
                    REQUIRE(p.A > 0.0);
                    const double delta = coverage::cdf_delta_term(p);
                    const double ups = coverage::cdf_upsilon_term(p);
                    CAPTURE(m);
                    CAPTURE(lambda);
                    CAPTURE(g);
                    CHECK(delta >= 0.0);
                    CHECK(ups >= 0.0);
                    CHECK(delta + ups <= 1.0 + 1e-9);
                    CHECK(coverage::sidnr_cdf(in, g) == doctest::Approx(cdf_oracle(in, g)).epsilon(1e-7));
                }
            }
        }
    }

    TEST_CASE("corner cases") {
        const auto in = inputs(2, 1.0);
        CHECK(coverage::sidnr_cdf(in, 0.0) == 0.0);
        CHECK(coverage::sidnr_cdf(in, inf) == 1.0);
        // v <= g (sic + phi^2): unreachable threshold.
        CHECK(coverage::sidnr_cdf(in, 3.5) == 1.0);
        double prev = 0.0;
        for (double g = 0.05; g < 3.4; g += 0.05) {
            const double f = coverage::sidnr_cdf(in, g);
            CHECK(f >= prev - 1e-12);
            prev = f;
        }
    }

    TEST_CASE("Monte Carlo agrees and is reproducible") {
        ScenarioConfig cfg;
        cfg.rng_seed = 5;
        cfg.primary_users = {{1000, 1000, 0}};
        cfg.secondary_users = {{500, 400, 0}, {450, 400, 0}};
        cfg.budget = {0.0, 4.0, 4.0, 1};
        cfg.itc_pathloss = false;
        cfg.impairments.phi_serving = cfg.impairments.phi_pbs = 0.02;
        const assign::ClusterMetric metric(cfg, {380, 400, 80});
        const std::vector<std::size_t> members{0, 1};
        const auto a = metric.allocate(0, members);
        const auto model = metric.coverage_model(0, members);
        const std::vector<double> rbars{0.3 * a.maxmin_rate, 0.7 * a.maxmin_rate};
        const auto mc = coverage::monte_carlo_coverage(model, a, rbars, 200000, 17);
        const auto again = coverage::monte_carlo_coverage(model, a, rbars, 200000, 17);
        for (std::size_t t = 0; t < rbars.size(); ++t) {
            const auto an = coverage::coverage_probability(model, a, rbars[t]);
            for (std::size_t n = 0; n < 2; ++n) {
                CHECK(mc[t][n].p_e2e == again[t][n].p_e2e);
                CHECK(mc[t][n].method == coverage::Method::monte_carlo);
                CHECK(std::abs(mc[t][n].p_e2e - an[n].p_e2e) <= std::max(0.005, 3.0 * *mc[t][n].mc_stderr));
                CHECK(an[n].p_e2e == doctest::Approx(an[n].p_phase1 * an[n].p_phase2));
            }
        }
        CHECK_THROWS_AS(coverage::monte_carlo_coverage(model, a, rbars, 0, 1), DomainError);
        CHECK(coverage::cluster_coverage(model, a, rbars[0]) >= coverage::cluster_coverage(model, a, rbars[1]));
    }
}
