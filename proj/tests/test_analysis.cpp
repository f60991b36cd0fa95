#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "diamond/analysis.hpp"
#include "diamond/lp.hpp"
#include "diamond/report_io.hpp"
#include "helpers.hpp"

using namespace diamond;

TEST_CASE("region classification examples") {
    const RegionId r1 = classify_region(derive({3, 3, 3, 3}));
    CHECK(r1.index == 1);
    CHECK(r1.delta_sign == Sign::zero);
    CHECK(r1.gamma_sign == Sign::zero);

    const RegionId r7 = classify_region(derive({15, 15, 3, 3}));
    CHECK(r7.index == 7);
    CHECK(r7.delta_sign == Sign::positive);

    CHECK(classify_region(derive({3, 15, 15, 3})).index <= 6);
    CHECK(classify_region(derive({3, 3, 15, 15})).index <= 6);
    CHECK(classify_region(swap_relays(derive({15, 3, 3, 15}))).index <= 6);

    for (int k = 1; k <= region_count; ++k) {
        const SchemeId s = recommended_scheme(k);
        if (k == 3 || k == 6) {
            CHECK(s == SchemeId::mdf_bc);
        } else if (k <= 6) {
            CHECK(s == SchemeId::mdf);
        } else {
            CHECK(s == SchemeId::mdf_mac);
        }
    }
}

TEST_CASE("gap formula requires the matching region") {
    const LinkCapacities c = derive({15, 15, 3, 3});
    RegionId wrong = classify_region(c);
    wrong.index = 1;
    CHECK_THROWS_AS(gap_formula(c, wrong), std::invalid_argument);
    // Multiple-access gap of this instance; at most 1/2 since delta = 0 here.
    CHECK(c.delta == doctest::Approx(0.0));
    const double k = gap_formula(c, classify_region(c));
    CHECK(k <= 0.5 + 1e-12);
    CHECK(k == doctest::Approx(1.2982997456721819166 - 1.1679416092939621696).epsilon(1e-12));
}

TEST_CASE("MDF reaches the cut-set optimum when Delta is zero") {
    std::mt19937_64 rng(211);
    std::uniform_real_distribution<double> u(0.05, 10.0), w(0.5, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const double c01 = u(rng), c02 = u(rng), c13 = w(rng);
        const double c23 = c01 * c02 / c13;
        const ChannelGains g{test::gain_of(c01), test::gain_of(c02), test::gain_of(c13), test::gain_of(c23)};
        const LinkCapacities c = derive(g);
        if (classify_delta(c) != Sign::zero) continue;
        const RateReport r = analyze(g);
        CHECK(r.achievable.rate == doctest::Approx(r.lp_optimum).epsilon(1e-9));
        CHECK(r.lp_optimum == doctest::Approx(capacity_delta0(c).value).epsilon(1e-9));
        // What is left is the coherent excess carried by the region bound.
        CHECK(r.measured_gap == doctest::Approx(c.delta).epsilon(1e-7));
    }
}

TEST_CASE("analysis of the worked examples") {
    const RateReport a = analyze({15, 3, 3, 15});
    CHECK(a.achievable.rate == doctest::Approx(4.0 / 3.0));
    CHECK(a.upper.value == doctest::Approx(4.0 / 3.0));
    CHECK(a.lp_optimum == doctest::Approx(4.0 / 3.0));
    CHECK(a.measured_gap == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(check_report(a).empty());

    const RateReport b = analyze({15, 15, 3, 3});
    CHECK(b.region.index == 7);
    CHECK(b.achievable.scheme == SchemeId::mdf_mac);
    CHECK(b.achievable.rate == doctest::Approx(1.1679416092939621696).epsilon(1e-14));
    CHECK(b.upper.value == doctest::Approx(1.2982997456721819166).epsilon(1e-14));
    CHECK(b.measured_gap == doctest::Approx(b.gap_formula_value).epsilon(1e-12));
    CHECK(check_report(b).empty());

    const RateReport z = analyze({0, 0, 0, 0});
    CHECK(z.achievable.rate == 0.0);
    CHECK(z.upper.value == doctest::Approx(0.0));
    CHECK(check_report(z).empty());

    CHECK_THROWS(analyze({-1, 1, 1, 1}));
}

TEST_CASE("sweep visits every region with consistent reports") {
    SweepSpec spec;
    spec.count = 30000;
    spec.seed = 5;
    std::size_t inconsistent = 0;
    const SweepSummary s = sweep(spec, [&](std::size_t, const RateReport& r) {
        if (!check_report(r).empty()) ++inconsistent;
    });
    CHECK(s.count == spec.count);
    CHECK(s.violations == 0);
    CHECK(inconsistent == 0);
    for (int k = 0; k < region_count; ++k) {
        INFO("region " << k + 1);
        CHECK(s.occupancy[k] > 0);
        CHECK(s.max_excess_by_region[k] <= 1e-7);
    }
    CHECK(s.max_gap <= 0.5 + max_coherent_excess() + 1e-7);
    CHECK(s.max_delta <= max_coherent_excess() + 1e-12);
}

TEST_CASE("sweep output does not depend on the worker count") {
    SweepSpec spec;
    spec.count = 3000;
    spec.seed = 42;
    std::vector<std::string> one, four;
    spec.workers = 1;
    const SweepSummary a = sweep(spec, [&](std::size_t, const RateReport& r) { one.push_back(csv_row(r)); });
    spec.workers = 4;
    std::size_t expect = 0;
    bool ordered = true;
    const SweepSummary b = sweep(spec, [&](std::size_t i, const RateReport& r) {
        if (i != expect++) ordered = false;
        four.push_back(csv_row(r));
    });
    CHECK(ordered);
    CHECK(one == four);
    CHECK(a.max_gap == b.max_gap);
    CHECK(a.occupancy == b.occupancy);
    CHECK(sample_gains(spec, 17).g01 == sample_gains(spec, 17).g01);
    SweepSpec other = spec;
    other.seed = 43;
    CHECK(sample_gains(spec, 17).g01 != sample_gains(other, 17).g01);
}

TEST_CASE("relabeling the relays leaves the rates unchanged") {
    std::mt19937_64 rng(223);
    for (int i = 0; i < 5000; ++i) {
        const ChannelGains g = test::random_gains(rng);
        const RateReport a = analyze(g);
        const RateReport b = analyze(swap_relays(g));
        CHECK(a.upper.value == doctest::Approx(b.upper.value).epsilon(1e-9));
        CHECK(a.achievable.rate == doctest::Approx(b.achievable.rate).epsilon(1e-9));
        CHECK(a.lp_optimum == doctest::Approx(b.lp_optimum).epsilon(1e-9));
    }
}

TEST_CASE("MDF gap study") {
    // C01 = C02 = 2, C13 = C23 = 1: symmetric, MDF within 1 + delta.
    const ChannelGains g{15, 15, 3, 3};
    const MdfGapStudy s = mdf_gap_study(derive(g), g);
    CHECK(s.symmetric);
    CHECK(s.mdf_gap <= 1.0 + derive(g).delta + 1e-12);
    CHECK(s.mdf_gap == doctest::Approx(s.mdf_gap_formula).epsilon(1e-12));
    CHECK(s.enhanced_scheme == SchemeId::mdf_mac);
    CHECK(s.enhanced_gap <= s.enhanced_guarantee + 1e-12);
    CHECK_FALSE(s.note.empty());

    const ChannelGains z{15, 3, 3, 15};
    const MdfGapStudy t = mdf_gap_study(derive(z), z);
    CHECK(t.mdf_gap == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937_64 rng(227);
    for (int i = 0; i < 20000; ++i) {
        const ChannelGains r = test::random_gains(rng);
        const LinkCapacities c = derive(r);
        const MdfGapStudy m = mdf_gap_study(c, r);
        CHECK(m.mdf_gap <= m.mdf_guarantee + 1e-7);
        CHECK(m.mdf_gap == doctest::Approx(m.mdf_gap_formula).epsilon(1e-7));
        CHECK(m.enhanced_gap <= m.enhanced_guarantee + 1e-7);
        if (m.symmetric || m.partially_symmetric) CHECK(m.mdf_gap <= 1.0 + c.delta + 1e-7);
    }
}

TEST_CASE("MDF gap grows on the unbalanced family") {
    const double alpha = 2.0, beta = 1.5;
    const ChannelGains g = mdf_gap_family(alpha, beta, 20.0);
    const LinkCapacities c = derive(g);
    CHECK(c.C02 == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(c.C01 == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(c.C13 == doctest::Approx(40.0).epsilon(1e-12));
    const MdfGapStudy s = mdf_gap_study(c, g);
    // Frozen at 40 digits by the independent oracle.
    CHECK(s.mdf_rate == doctest::Approx(25.714285714285714286).epsilon(1e-12));
    CHECK(s.mdf_gap == doctest::Approx(0.95238113582902330228).epsilon(1e-6));
    CHECK(mdf_gap_growth_bound(alpha, beta, 20.0) == doctest::Approx(0.68027210884353741497).epsilon(1e-14));
    CHECK(s.enhanced_gap <= 0.5 + max_coherent_excess() + 1e-9);

    double last = 0.0;
    for (double x : {5.0, 10.0, 20.0, 40.0, 80.0}) {
        const ChannelGains gx = mdf_gap_family(alpha, beta, x);
        const MdfGapStudy sx = mdf_gap_study(derive(gx), gx);
        CHECK(sx.mdf_gap >= mdf_gap_growth_bound(alpha, beta, x) - 1e-9);
        CHECK(sx.mdf_gap > last);
        CHECK(sx.enhanced_gap <= 0.5 + max_coherent_excess() + 1e-9);
        last = sx.mdf_gap;
    }
    CHECK(gain_for_capacity(1.0) == doctest::Approx(3.0));
}
