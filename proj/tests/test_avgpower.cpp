#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "diamond/avgpower.hpp"
#include "diamond/lp.hpp"
#include "helpers.hpp"

using namespace diamond;

TEST_CASE("average-power bound on simple channels") {
    CHECK(avg_power_cutset({0, 0, 0, 0}, 8, 8).value == doctest::Approx(0.0));

    const ChannelGains g{3, 3, 3, 3};
    const AvgPowerResult r = avg_power_cutset(g, 16, 16);
    const double constant = lp::cutset_optimum(derive(g));
    CHECK(constant == doctest::Approx(1.0));
    CHECK(r.value >= constant - 1e-9);
    CHECK(r.value <= constant + avg_power_slack_limit);
    CHECK(r.schedule.valid());
    CHECK(r.profile.within_budget(r.schedule));
    const auto cuts = avg_power_cuts(g, r.schedule, r.profile);
    double m = cuts[0];
    for (double c : cuts) m = std::min(m, c);
    CHECK(m == doctest::Approx(r.value).epsilon(1e-12));
}

TEST_CASE("constant powers reproduce the constant-power cuts") {
    const ChannelGains g{15, 3, 3, 15};
    const Schedule t{0.0, 1.0 / 3.0, 2.0 / 3.0, 0.0};
    PowerProfile p;
    p.source = {1, 1, 1, 0};
    p.relay1 = {0, 0, 1, 1};
    p.relay2 = {0, 1, 0, 1};
    CHECK(p.within_budget(t));
    const auto a = avg_power_cuts(g, t, p);
    const auto b = lp::cut_values(derive(g), t.as_array());
    for (int k = 0; k < 4; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));

    p.source = {4, 4, 4, 0};
    CHECK_FALSE(p.within_budget(t));
    p.source = {1, 1, 1, 1};
    CHECK_FALSE(p.within_budget(t));  // the source is silent in mode 4
}

TEST_CASE("per-term gain identity and limit") {
    for (double t = 1e-9; t <= 1.0; t *= 1.7) {
        for (double g : {0.0, 1e-4, 0.3, 1.0, 10.0, 1e4, 1e10}) {
            const double v = per_term_gain(t, g);
            CHECK(v >= 0.0);
            CHECK(v <= per_term_limit + 1e-12);
            CHECK(v == doctest::Approx(t * capacity_of(g / t) - t * capacity_of(g)).epsilon(1e-8));
        }
    }
    CHECK(per_term_gain(1.0, 5.0) == doctest::Approx(0.0));
    CHECK(per_term_gain(1e-12, 1e12) <= per_term_limit);
    // The supremum over t is at t = 1/e as g grows: 1/(2e ln 2), well inside the limit.
    CHECK(per_term_gain(std::exp(-1.0), 1e15) == doctest::Approx(1.0 / (2.0 * std::exp(1.0) * std::log(2.0))).epsilon(1e-9));
    CHECK_THROWS_AS(per_term_gain(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(per_term_gain(0.5, -1.0), std::domain_error);
}

TEST_CASE("slack checks on random channels") {
    std::mt19937_64 rng(503);
    for (int i = 0; i < 20; ++i) {
        const ChannelGains g = test::random_gains(rng);
        const SlackReport s = verify_slack(g, 12, 12);
        CHECK(s.passed);
        CHECK(s.monotone);
        CHECK(s.slack <= avg_power_slack_limit + 1e-6);
        CHECK(s.worst_per_term <= per_term_limit + 1e-12);
    }
    CHECK_THROWS_AS(avg_power_cutset({1, 1, 1, 1}, 4, 16), std::invalid_argument);
    CHECK_THROWS_AS(avg_power_cutset({1, 1, 1, 1}, 16, 7), std::invalid_argument);
}
