// Acceptance checks. Usage: acceptance [N | all]. Prints one line per criterion and exits
// nonzero when any selected criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diamond/analysis.hpp"
#include "diamond/avgpower.hpp"
#include "diamond/bounds.hpp"
#include "diamond/gdof.hpp"
#include "diamond/lp.hpp"
#include "diamond/properties.hpp"
#include "diamond/report_io.hpp"
#include "diamond/schemes.hpp"

using namespace diamond;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

ChannelGains log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return {std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))};
}

double gain_of(double c) { return std::expm1(2.0 * c * std::log(2.0)); }

const double universal_gap = 0.5 + 0.5 * std::log2(4.0 / 3.0);

SweepSpec main_sweep() {
    SweepSpec s;
    s.count = 100000;
    s.seed = 1;
    s.gain_min = 1e-2;
    s.gain_max = 1e4;
    s.workers = 1;
    return s;
}

Outcome delta_zero_capacity() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> cap(capacity_of(1e-2), capacity_of(1e4));
    double worst = 0.0;
    int built = 0, redrawn = 0;
    while (built < 1000) {
        const double c01 = cap(rng), c02 = cap(rng), c13 = cap(rng);
        const double c23 = c01 * c02 / c13;
        // A small C13 can push C23 past what a double gain can hold.
        if (!std::isfinite(gain_of(c23))) {
            ++redrawn;
            continue;
        }
        const LinkCapacities c = derive({gain_of(c01), gain_of(c02), gain_of(c13), gain_of(c23)});
        if (classify_delta(c) != Sign::zero) return {false, "constructed channel " + std::to_string(built) + " has Delta != 0"};
        ++built;
        const double m = mdf(c).rate;
        const double lp = lp::cutset_optimum(c);
        const double cap0 = capacity_delta0(c).value;
        worst = std::max({worst, std::abs(m - lp), std::abs(m - cap0), std::abs(lp - cap0)});
    }
    const double secs = seconds_since(t0);
    const bool ok = worst <= 1e-7 && secs < 5.0;
    return {ok, std::to_string(built) + " channels (" + std::to_string(redrawn) + " redrawn), max |MDF - LP - capacity| spread " + num(worst) + ", " +
                    num(secs) + " s"};
}

Outcome universal_gap_sweep() {
    const auto t0 = Clock::now();
    std::size_t over = 0;
    double worst = 0.0;
    const SweepSummary s = sweep(main_sweep(), [&](std::size_t, const RateReport& r) {
        worst = std::max(worst, r.measured_gap);
        if (r.measured_gap > universal_gap + 1e-7) ++over;
    });
    const double secs = seconds_since(t0);
    const bool ok = over == 0 && s.violations == 0 && secs < 60.0;
    return {ok, "max gap " + num(worst) + " vs " + num(universal_gap) + ", " + std::to_string(over) +
                    " over, " + std::to_string(s.violations) + " report violations, " + num(secs) + " s"};
}

Outcome region_guarantees() {
    const SweepSummary s = sweep(main_sweep());
    double worst = -1e300;
    int worst_region = 0;
    int empty = 0;
    for (int k = 0; k < region_count; ++k) {
        if (s.occupancy[k] == 0) {
            ++empty;
            continue;
        }
        if (s.max_excess_by_region[k] > worst) {
            worst = s.max_excess_by_region[k];
            worst_region = k + 1;
        }
    }
    const bool ok = worst <= 1e-7;
    return {ok, "largest gap minus guarantee " + num(worst) + " (region " + std::to_string(worst_region) + "), " +
                    std::to_string(region_count - empty) + " of 14 regions populated"};
}

Outcome property_suite() {
    VerifyOptions o;
    o.count = 100000;
    o.seed = 1;
    const VerifyResult r = run_properties(o);
    const LinkCapacities witness = derive({1, 1, 0.5, 0.5});
    std::string failed;
    for (const PropertyRow& row : r.rows) {
        if (row.violations > 0 && failed.empty()) failed = row.name + ": " + row.first_failure;
    }
    const bool ok = r.passed() && r.max_delta <= 0.20753 && witness.delta >= 0.207;
    std::string d = std::to_string(r.rows.size()) + " properties, " + std::to_string(r.violations()) +
                    " violations, worst delta " + num(r.max_delta) + ", witness delta " + num(witness.delta);
    if (!failed.empty()) d += ", first: " + failed;
    return {ok, d};
}

Outcome lp_cross_validation() {
    std::mt19937_64 rng(55);
    double exact = 0.0, grid = 0.0, bound_excess = -1e300;
    for (int i = 0; i < 1000; ++i) {
        const LinkCapacities c = derive(log_uniform(rng, 1e-2, 1e4));
        const lp::LinearProgram p = lp::build_cutset_primal(c);
        const double s = lp::solve_simplex(p).objective_value;
        const double v = lp::enumerate_vertices(p).objective_value;
        const double g = lp::grid_search_schedule(
                             [&](const std::array<double, 4>& t) {
                                 const auto cuts = lp::cut_values(c, t);
                                 return *std::min_element(cuts.begin(), cuts.end());
                             },
                             200)
                             .rate;
        exact = std::max(exact, std::abs(s - v));
        grid = std::max(grid, std::abs(s - g));
        const double lipschitz = std::max({c.C012, c.C01 + c.C23, c.C02 + c.C13, c.C123});
        bound_excess = std::max(bound_excess, std::abs(s - g) - lipschitz / 200.0);
    }
    const bool ok = exact <= 1e-7 && grid <= 1e-2;
    return {ok, "simplex vs vertices " + num(exact) + ", grid (resolution 200) " + num(grid) +
                    " (needs <= 0.01), largest grid error minus Lipschitz/resolution " + num(bound_excess)};
}

Outcome certificates() {
    std::size_t failed = 0, below = 0, n = 0;
    std::string first;
    auto check = [&](const RateReport& r) {
        ++n;
        if (!r.certificate.passed) {
            ++failed;
            if (first.empty() && !r.certificate.failures.empty()) first = r.certificate.failures.front();
        }
        if (r.upper.value < r.lp_optimum - 1e-7) ++below;
    };
    sweep(main_sweep(), [&](std::size_t, const RateReport& r) { check(r); });
    SweepSpec wide = main_sweep();
    wide.count = 20000;
    wide.seed = 2;
    wide.gain_min = 1e-4;
    wide.gain_max = 1e8;
    sweep(wide, [&](std::size_t, const RateReport& r) { check(r); });
    std::string d = std::to_string(n) + " bounds, " + std::to_string(failed) + " certificate failures, " +
                    std::to_string(below) + " below the LP optimum";
    if (!first.empty()) d += ", first: " + first;
    return {failed == 0 && below == 0, d};
}

Outcome mdf_gap_witness() {
    const ChannelGains g = mdf_gap_family(2.0, 1.5, 20.0);
    const MdfGapStudy s = mdf_gap_study(derive(g), g);
    const bool ok = s.mdf_gap > 1.0 && s.enhanced_gap <= 0.7075;
    return {ok, "x = 20: MDF gap " + num(s.mdf_gap) + " (needs > 1), MDF-BC gap " + num(s.enhanced_gap)};
}

Outcome gdof() {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    double closed = 0.0;
    int tested = 0;
    while (tested < 1000) {
        const GdofExponents a{u(rng), u(rng), u(rng), u(rng)};
        if (a.degenerate()) continue;
        ++tested;
        const GdofTable t = gdof_closed_forms(a);
        closed = std::max(closed, std::abs(t.achievable - t.upper));
    }
    std::vector<double> grid;
    for (double p = 1e2; p <= 1e12 * 1.0001; p *= 10.0) grid.push_back(p);
    double numeric = 0.0;
    std::uniform_real_distribution<double> v(0.5, 3.0);
    for (int i = 0; i < 100; ++i) {
        const GdofExponents a{v(rng), v(rng), v(rng), v(rng)};
        const GdofTable t = gdof_closed_forms(a);
        const GdofSample s = gdof_numeric(a, grid).back();
        numeric = std::max({numeric, std::abs(s.achievable_ratio - t.achievable), std::abs(s.upper_ratio - t.upper)});
    }
    std::vector<double> snr;
    for (double p = 10.0; p <= 1e15; p *= 10.0) snr.push_back(p);
    const double mg = multiplexing_gain([](double p) { return ChannelGains{p, p, p, p}; }, snr);
    const bool ok = closed <= 1e-9 && numeric <= 0.05 && std::abs(mg - 1.0) <= 0.05;
    return {ok, "closed-form mismatch " + num(closed) + ", numeric deviation at 1e12 " + num(numeric) +
                    ", MDF multiplexing gain " + num(mg)};
}

Outcome average_power() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(99);
    double slack = 0.0, shortfall = -1e300;
    std::size_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const ChannelGains g = log_uniform(rng, 1e-2, 1e4);
        const SlackReport s = verify_slack(g, 16, 16);
        const double ach = analyze(g).achievable.rate;
        slack = std::max(slack, s.slack);
        shortfall = std::max(shortfall, s.avg_power_value - ach);
        if (!s.passed || s.avg_power_value - ach > 3.6) ++bad;
    }
    const double secs = seconds_since(t0);
    const bool ok = bad == 0 && slack <= avg_power_slack_limit && secs < 600.0;
    return {ok, "max slack " + num(slack) + " (limit 2.8854), max bound minus achievable " + num(shortfall) +
                    " (limit 3.6), " + num(secs) + " s"};
}

std::string sweep_csv(unsigned workers) {
    SweepSpec s;
    s.count = 5000;
    s.seed = 314;
    s.workers = workers;
    std::ostringstream out;
    out << csv_header() << '\n';
    sweep(s, [&](std::size_t, const RateReport& r) { out << csv_row(r) << '\n'; });
    return out.str();
}

Outcome determinism() {
    const std::string a = sweep_csv(1), b = sweep_csv(1), c = sweep_csv(4);
    return {a == b && a == c, std::to_string(a.size()) + " bytes; rerun " + (a == b ? "identical" : "differs") +
                                  ", 4 workers " + (a == c ? "identical" : "differs")};
}

const std::vector<std::function<Outcome()>> criteria = {
    delta_zero_capacity, universal_gap_sweep, region_guarantees, property_suite, lp_cross_validation,
    certificates,        mdf_gap_witness,   gdof,              average_power,  determinism,
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> chosen;
    const std::string arg = argc > 1 ? argv[1] : "all";
    if (arg == "all") {
        for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) chosen.push_back(k);
    } else {
        const int k = std::atoi(arg.c_str());
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::cerr << "usage: acceptance [1-10 | all]\n";
            return 2;
        }
        chosen.push_back(k);
    }
    int failures = 0;
    for (int k : chosen) {
        Outcome o;
        try {
            o = criteria[k - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << ": " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
