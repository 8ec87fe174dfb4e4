#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "ccr/channel.hpp"
#include "ccr/error.hpp"

using namespace ccr;

TEST_SUITE("channel") {
    TEST_CASE("free-space path loss") {
        // 20 log10(d_km) + 20 log10(f_MHz) + 32.45
        CHECK(channel::fspl_db(1000.0, 1.8e9) == doctest::Approx(97.55).epsilon(2e-4));
        CHECK(channel::fspl_db(2000.0, 1.8e9) - channel::fspl_db(1000.0, 1.8e9) ==
              doctest::Approx(20.0 * std::log10(2.0)));
        CHECK_THROWS_AS(channel::fspl_db(0.0, 1.8e9), DomainError);
        CHECK_THROWS_AS(channel::fspl_db(-1.0, 1.8e9), DomainError);
    }

    TEST_CASE("line-of-sight probability") {
        const LosParams p{13.0, 0.22};
        CHECK(channel::los_probability(90.0, p) == doctest::Approx(1.0 / (1.0 + 13.0 * std::exp(-0.22 * 77.0))));
        CHECK(channel::los_probability(13.0, p) == doctest::Approx(1.0 / 14.0));
        CHECK(channel::los_probability(80.0, p) > channel::los_probability(20.0, p));
        const auto g = channel::make_geometry({0, 0, 0}, {100, 0, 100});
        CHECK(g.elevation_deg == doctest::Approx(45.0));
        CHECK(g.slant == doctest::Approx(100.0 * std::sqrt(2.0)));
    }

    TEST_CASE("mean attenuation matches mean path loss") {
        const LosParams p{7.0, 0.2};
        const EtaDb eta;
        const auto g = channel::make_geometry({250, 250, 20}, {400, 400, 80});
        const double pl = channel::mean_path_loss_db(g, p, eta, 1.8e9);
        CHECK(-10.0 * std::log10(channel::mean_attenuation(g, p, eta, 1.8e9)) == doctest::Approx(pl));
        const double pr = channel::los_probability(g, p);
        const double fs = channel::fspl_db(g.slant, 1.8e9);
        CHECK(pl == doctest::Approx(fs + pr * 1.6 + (1.0 - pr) * 20.0));
    }

    TEST_CASE("Nakagami power samples pass a KS test") {
        for (int m : {1, 2, 4}) {
            Rng rng(7, Stream::test, static_cast<std::uint64_t>(m));
            const std::size_t n = 20000;
            std::vector<double> s(n);
            for (auto& v : s) v = channel::sample_nakagami_power(m, rng);
            std::sort(s.begin(), s.end());
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double f = boost::math::gamma_p(m, m * s[i]);
                d = std::max({d, std::abs(f - double(i) / n), std::abs(f - double(i + 1) / n)});
            }
            CAPTURE(m);
            CHECK(d < 1.63 / std::sqrt(double(n)));  // 1% level
        }
    }

    TEST_CASE("imperfect CSI") {
        const auto g = channel::make_geometry({0, 0, 0}, {300, 0, 100});
        const channel::LinkModel model{{13.0, 0.22}, {}, 1.8e9, 2};
        const auto e = channel::expected_channel(g, model, 0.01);
        CHECK(e.est_power == doctest::Approx(0.99));
        CHECK(e.h_true_power == 1.0);
        CHECK(channel::expected_channel(g, model, 0.0).est_power == 1.0);
        Rng r1(1, Stream::test);
        CHECK_THROWS_AS(channel::sample_channel(g, model, 1.0, r1), ConfigError);
        CHECK(channel::csi_error_variance(0.01, 0.0, 1e6) == doctest::Approx(0.01));
        CHECK(channel::csi_error_variance(0.01, 1.0, 100.0) == doctest::Approx(1e-4));

        Rng rng(3, Stream::test);
        double sum_true = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) sum_true += channel::sample_channel(g, model, 0.05, rng).h_true_power;
        CHECK(sum_true / n == doctest::Approx(1.0).epsilon(0.01));
    }
}
