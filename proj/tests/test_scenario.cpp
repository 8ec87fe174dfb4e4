#include "doctest.h"

#include <array>
#include <cmath>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "ccr/error.hpp"
#include "ccr/scenario.hpp"

using namespace ccr;

namespace {

ScenarioConfig minimal() {
    ScenarioConfig c;
    c.primary_users = {{1000, 1000, 0}};
    c.secondary_users = {{500, 400, 0}, {450, 400, 0}};
    return c;
}

}  // namespace

TEST_SUITE("scenario") {
    TEST_CASE("serialization round trip") {
        auto c = minimal();
        c.rng_seed = 42;
        c.impairments.fading = {1, 3, 4};
        c.impairments.phi_serving = 0.05;
        c.metric = Metric::coverage;
        c.bandwidth_scaling = BandwidthScaling::per_channel;
        c.search.hi.z = 333.25;
        c.itc_pathloss = false;
        CHECK(parse_scenario(serialize_scenario(c)) == c);
        for (const char* name : {"reference", "hi_sweep", "itc_saturation", "hotspot"}) {
            CAPTURE(name);
            const auto s = load_scenario(std::string(CCR_SCENARIO_DIR) + "/" + name + ".json");
            CHECK_NOTHROW(validate(s));
            CHECK(parse_scenario(serialize_scenario(s)) == s);
        }
    }

    TEST_CASE("invalid input") {
        CHECK_THROWS_AS(parse_scenario("{"), ConfigError);
        CHECK_THROWS_AS(parse_scenario("{}"), ConfigError);
        CHECK_THROWS_AS(parse_scenario(R"({"rng_seed": 1, "nodes": {"uav": [1, 2]}})"), ConfigError);
        CHECK_THROWS_AS(parse_scenario(R"({"rng_seed": 1, "metric": "snr"})"), ConfigError);
        auto c = minimal();
        c.budget.k_channels = 0;
        CHECK_THROWS_AS(validate(c), ConfigError);
        c = minimal();
        c.uav.z = -1.0;
        CHECK_THROWS_AS(validate(c), ConfigError);
        c = minimal();
        c.primary_users.clear();
        CHECK_THROWS_AS(validate(c), ConfigError);
        c = minimal();
        c.impairments.fading.serving = 0;
        CHECK_THROWS_AS(validate(c), ConfigError);
        CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ConfigError);
    }

    TEST_CASE("units and bandwidth") {
        CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
        CHECK(watts_to_dbm(1e-3) == doctest::Approx(0.0));
        auto c = minimal();
        c.budget.k_channels = 1;
        CHECK(c.cluster_capacity() == 2);
        CHECK(c.channel_bandwidth() == doctest::Approx(2.0 * c.bandwidth_hz));
        CHECK(watts_to_dbm(c.noise_power()) == doctest::Approx(-174.0 + 10.0 * std::log10(360e3)));
        c.bandwidth_scaling = BandwidthScaling::per_channel;
        CHECK(c.channel_bandwidth() == c.bandwidth_hz);
        c.primary_users.push_back({0, 900, 0});
        CHECK(c.primary_user(3).y == 900.0);
    }

    TEST_CASE("hot-spot users are uniform over the disc") {
        const Hotspot h{{400, 400, 0}, 100.0};
        Rng rng(9, Stream::users);
        const auto users = generate_hotspot_users(h, 20000, rng);
        // Ten equal-area rings and four quadrants.
        std::array<double, 10> rings{};
        std::array<double, 4> quads{};
        for (const auto& u : users) {
            const double dx = u.x - 400.0, dy = u.y - 400.0;
            const double r = std::hypot(dx, dy);
            REQUIRE(r <= 100.0);
            CHECK(u.z == 0.0);
            rings[std::min<std::size_t>(9, static_cast<std::size_t>(10.0 * r * r / 1e4))] += 1.0;
            quads[(dx >= 0 ? 0 : 1) + (dy >= 0 ? 0 : 2)] += 1.0;
        }
        auto chi2 = [&](const auto& bins) {
            const double e = double(users.size()) / bins.size();
            double s = 0.0;
            for (double b : bins) s += (b - e) * (b - e) / e;
            return s;
        };
        const boost::math::chi_squared d9(9), d3(3);
        CHECK(chi2(rings) < boost::math::quantile(d9, 0.999));
        CHECK(chi2(quads) < boost::math::quantile(d3, 0.999));
    }
}
