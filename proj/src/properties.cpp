#include "diamond/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "diamond/analysis.hpp"
#include "diamond/avgpower.hpp"
#include "diamond/lp.hpp"

namespace diamond {

namespace {

constexpr double tol = 1e-7;
const double universal_gap_limit = 0.5 + max_coherent_excess();

class Table {
public:
    PropertyRow& row(const std::string& name) {
        auto it = index_.find(name);
        if (it == index_.end()) {
            it = index_.emplace(name, rows_.size()).first;
            PropertyRow r;
            r.name = name;
            r.worst_margin = std::numeric_limits<double>::infinity();
            rows_.push_back(r);
        }
        return rows_[it->second];
    }

    /// Records margin; a violation when margin < -allowed.
    void check(const std::string& name, double margin, double allowed, std::size_t sample) {
        PropertyRow& r = row(name);
        ++r.checked;
        if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
        r.worst_margin = std::min(r.worst_margin, margin);
        if (margin < -allowed) {
            if (r.violations == 0) r.first_failure = "sample " + std::to_string(sample) + ", margin " + std::to_string(margin);
            ++r.violations;
        }
    }

    void fail(const std::string& name, std::size_t sample, const std::string& what) {
        PropertyRow& r = row(name);
        ++r.checked;
        r.worst_margin = -std::numeric_limits<double>::infinity();
        if (r.violations == 0) r.first_failure = "sample " + std::to_string(sample) + ": " + what;
        ++r.violations;
    }

    std::vector<PropertyRow> take() {
        for (auto& r : rows_) {
            if (r.checked == 0) r.worst_margin = 0.0;
        }
        return std::move(rows_);
    }

private:
    std::vector<PropertyRow> rows_;
    std::map<std::string, std::size_t> index_;
};

void check_channel(Table& t, const ChannelGains& g, const LinkCapacities& caps, std::size_t i) {
    const RateReport r = analyze(g, caps);
    const LinkCapacities& c = r.caps;
    const int region = r.region.index;

    t.check("coherent excess at most 0.5*log2(4/3)", max_coherent_excess() - c.delta, 1e-12, i);
    t.check("C012 - max(C01, C02) at most 1/2", 0.5 - (c.C012 - std::max(c.C01, c.C02)), 1e-12, i);
    t.check("C123 - max(C13, C23) at most 1", 1.0 - (c.C123 - std::max(c.C13, c.C23)), 1e-12, i);
    t.check("C123 - CMAC at most 1/2", 0.5 - (c.C123 - c.CMAC), 1e-12, i);

    t.check("dual tau limit on the enlarged instance", r.certificate.tau_limit_margin, 1e-9, i);
    t.check("enlargement cost at most delta", c.delta - enlargement_cost(c, r.upper), tol, i);
    t.check("dual certificate", r.certificate.passed ? r.upper.value - r.certificate.max_row : -1.0, tol, i);

    if (region == 3) t.check("broadcast gap at most 1/2 + delta", 0.5 + c.delta - gap_value(c, GapSymbol::bc1), tol, i);
    if (region == 6) t.check("broadcast gap at most 1/2 + delta", 0.5 + c.delta - gap_value(c, GapSymbol::bc2), tol, i);
    if (region == 2) t.check("kappa5/kappa6 at most 1/2 + delta", 0.5 + c.delta - gap_value(c, GapSymbol::k5), tol, i);
    if (region == 5) t.check("kappa5/kappa6 at most 1/2 + delta", 0.5 + c.delta - gap_value(c, GapSymbol::k6), tol, i);
    if (region == 8) t.check("kappa7/kappa8 at most 1", 1.0 - gap_value(c, GapSymbol::k7), tol, i);
    if (region == 12) t.check("kappa7/kappa8 at most 1", 1.0 - gap_value(c, GapSymbol::k8), tol, i);

    if (r.mdf_mac) {
        const SchemeResult& m = *r.mdf_mac;
        double margin = m.schedule.valid() ? 0.0 : -1.0;
        if (const auto* s = std::get_if<MacSplit>(&m.split)) {
            const double t4 = m.schedule.t4;
            margin = std::min({margin, t4 * c.C13 - s->R1, t4 * c.C23 - s->R2, t4 * c.CMAC - s->R1 - s->R2,
                               s->R1, s->R2});
        }
        margin = std::min(margin, general_rate(c, m) - m.rate);
        t.check("multiple-access rates feasible", margin, tol, i);
    }

    t.check("gap at most 1/2 + 0.5*log2(4/3)", universal_gap_limit - r.measured_gap, tol, i);
    t.check("gap within the region guarantee", r.gap_guarantee - r.measured_gap, tol, i);
    t.check("achievable <= cut-set optimum <= upper bound",
            std::min(r.lp_optimum - r.achievable.rate, r.upper.value - r.lp_optimum), tol, i);
    t.check("gap equals its closed form", -std::abs(r.measured_gap - r.gap_formula_value), tol, i);

    const auto dual = lp::solve_simplex(lp::build_cutset_dual(c));
    t.check("primal and dual cut-set optima agree", -std::abs(dual.objective_value - r.lp_optimum), tol, i);
}

}  // namespace

std::size_t VerifyResult::violations() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.violations;
    return n;
}

VerifyResult run_properties(const VerifyOptions& o) {
    VerifyResult out;
    Table t;
    SweepSpec spec;
    spec.count = o.count;
    spec.seed = o.seed;
    spec.gain_min = o.gain_min;
    spec.gain_max = o.gain_max;

    for (std::size_t i = 0; i < o.count; ++i) {
        const ChannelGains g = sample_gains(spec, i);
        LinkCapacities caps = derive(g);
        out.max_delta = std::max(out.max_delta, caps.delta);
        if (o.flip_delta_sign) caps.Delta = -caps.Delta;
        try {
            check_channel(t, g, caps, i);
            t.check("analysis completes", 0.0, 0.0, i);
        } catch (const std::exception& e) {
            t.fail("analysis completes", i, e.what());
        }
    }

    if (o.avg_power) {
        SweepSpec ap = spec;
        ap.seed = o.seed + 1;
        for (std::size_t i = 0; i < o.avg_power_count; ++i) {
            const ChannelGains g = sample_gains(ap, i);
            const SlackReport s = verify_slack(g, o.schedule_resolution, o.power_resolution);
            t.check("average-power bound at least the constant-power optimum", s.slack, 1e-9, i);
            t.check("average-power slack at most 2/ln 2", avg_power_slack_limit - s.slack, 1e-6, i);
            t.check("per-term gain at most 1/(2 ln 2)", per_term_limit - s.worst_per_term, 1e-12, i);
        }
    }
    out.rows = t.take();
    return out;
}

}  // namespace diamond
