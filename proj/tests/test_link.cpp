#include "doctest.h"

#include <cmath>
#include <vector>

#include "ccr/error.hpp"
#include "ccr/instances.hpp"
#include "ccr/link.hpp"

using namespace ccr;

TEST_SUITE("link") {
    TEST_CASE("SIDNR of one receiver") {
        link::PhaseTerms t;
        t.est_gain = 0.9;
        t.err_power = 0.02;
        t.hi_var = 0.0025;
        t.interf_gain = 1.3;
        t.pbs_interf = 0.4;
        t.noise = 0.1;
        const double v = 0.6, sic = 0.3;
        CHECK(link::sidnr(t, v, sic) == doctest::Approx(0.9 * 0.6 / (0.9 * 0.3 + 0.9 * 0.0025 + 0.02 + 0.52 + 0.1)));
        CHECK(t.aggregate() == doctest::Approx(0.0025 + (0.02 + 0.52 + 0.1) / 0.9));
        // SIDNR = v / (sic + aggregate)
        CHECK(link::sidnr(t, v, sic) == doctest::Approx(v / (sic + t.aggregate())));
    }

    TEST_CASE("cluster ordering and SIC") {
        link::PhaseTerms b;
        std::vector<link::PhaseTerms> relay(3);
        relay[0].est_gain = 1.0;
        relay[1].est_gain = 0.5;
        relay[2].est_gain = 1.0;
        const std::vector<std::size_t> users{7, 3, 5};
        const std::vector<double> ell{2e-9, 2e-9, 1e-9};
        const auto s = link::assemble(b, users, relay, ell);
        // Gains 2e-9, 1e-9, 1e-9; the tie between users 3 and 5 goes to the lower id.
        CHECK(s.user_order == std::vector<std::size_t>{3, 5, 7});
        CHECK_THROWS_AS(link::assemble(b, std::vector<std::size_t>{}, relay, ell), DomainError);

        Rng rng(4, Stream::test);
        const auto c = instances::random_cluster(rng, 3);
        const std::vector<double> alpha{0.5, 0.3, 0.2};
        for (std::size_t n = 0; n < 3; ++n) {
            double sic = 0.0;
            for (std::size_t j = n + 1; j < 3; ++j) sic += alpha[j];
            CHECK(link::broadcast_sidnr(c, alpha, n) == doctest::Approx(link::sidnr(c.broadcast, alpha[n], sic)));
            CHECK(link::relay_sidnr(c, alpha, n) == doctest::Approx(link::sidnr(c.relay[n], alpha[n], sic)));
        }
    }

    TEST_CASE("rates") {
        CHECK(link::e2e_sidnr(3.0, 1.0) == 1.0);
        CHECK(link::user_rate(3.0, 3.0, 0.5, 2.0) == doctest::Approx(2.0));
        CHECK(link::user_rate(3.0, 1.0, 0.5, 2.0) == doctest::Approx(1.0));
    }

    TEST_CASE("expected-channel terms from a scenario") {
        ScenarioConfig c;
        c.primary_users = {{1000, 1000, 0}};
        c.secondary_users = {{500, 400, 0}, {450, 400, 0}};
        c.impairments.csi_theta = 0.01;
        const std::vector<std::size_t> members{0, 1};
        const auto s = link::interference_noise_terms(c, c.uav, members);
        REQUIRE(s.size() == 2);
        CHECK(s.relay[0].est_gain == doctest::Approx(0.99));
        CHECK(s.relay[0].err_power == doctest::Approx(0.01));
        const auto bud = link::link_budget(c, c.uav);
        // The farther user (id 0 at 100 m) decodes first.
        CHECK(bud.uav_su[0] < bud.uav_su[1]);
        CHECK(s.user_order.front() == 0);
    }
}
