#include "diamond/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "diamond/lp.hpp"

namespace diamond {

namespace {

constexpr double report_tolerance = 1e-7;
constexpr std::size_t kept_messages = 20;

double g2(double num, double b, double c) { return guarded_ratio(guarded_ratio(num, b), c); }
double g3(double num, double b, double c, double d) { return guarded_ratio(g2(num, b, c), d); }

}  // namespace

std::string RegionId::label() const {
    const bool low = index <= 6;
    const bool gamma_le = low ? (index <= 3) : (index <= 10);
    std::string s = low ? "Delta<=0, Gamma" : "Delta>0, Gamma'";
    s += gamma_le ? "<=0" : ">0";
    if (!subcondition.empty()) s += ", " + subcondition;
    return s;
}

std::string to_string(GapSymbol s) {
    switch (s) {
        case GapSymbol::k1: return "kappa1";
        case GapSymbol::k2: return "kappa2";
        case GapSymbol::k3: return "kappa3";
        case GapSymbol::k4: return "kappa4";
        case GapSymbol::k5: return "kappa5";
        case GapSymbol::k6: return "kappa6";
        case GapSymbol::k7: return "kappa7";
        case GapSymbol::k8: return "kappa8";
        case GapSymbol::bc1: return "kappa_BC1";
        case GapSymbol::bc2: return "kappa_BC2";
        case GapSymbol::mac1: return "kappa_MAC1";
        case GapSymbol::mac2: return "kappa_MAC2";
    }
    return "?";
}

double gap_value(const LinkCapacities& c, GapSymbol symbol) {
    const double a = c.C01, b = c.C02, k = c.C13, d = c.C23;
    const double S = c.C012, T = c.C123, M = c.CMAC, D = c.Delta, dl = c.delta;
    switch (symbol) {
        case GapSymbol::k1: return g2(-(S - a) * D, a + k, S - a + d) + dl;
        case GapSymbol::k2: return g2(-(S - b) * D, b + d, S - b + k) + dl;
        case GapSymbol::k3: return g2((T - k) * D, a + k, T - k + b) + dl;
        case GapSymbol::k4: return g2((T - d) * D, b + d, T - d + a) + dl;
        case GapSymbol::k5:
            return guarded_ratio(-D, a + k) * (guarded_ratio(a + d, b + d) - guarded_ratio(d, S - a + d)) + dl;
        case GapSymbol::k6:
            return guarded_ratio(-D, b + d) * (guarded_ratio(b + k, a + k) - guarded_ratio(k, S - b + k)) + dl;
        case GapSymbol::k7:
            return guarded_ratio(D, a + k) * (guarded_ratio(b + k, b + d) - guarded_ratio(b, T - k + b));
        case GapSymbol::k8:
            return guarded_ratio(D, b + d) * (guarded_ratio(a + d, a + k) - guarded_ratio(a, T - d + a));
        case GapSymbol::bc1: {
            const double z = c.zeta1;
            const double num = -z * ((S - a + d) * (k - d) + d * (b + d)) * D;
            const double inner = (a + k) * (S - a + d) - z * (b + d);
            return g3(num, a + k, S - a + d, inner) + dl;
        }
        case GapSymbol::bc2: return gap_value(swap_relays(c), GapSymbol::bc1);
        case GapSymbol::mac1: return g3(b * (T - M) * D, a + k, M - k + b, T - k + b) + dl;
        case GapSymbol::mac2: return g3(a * (T - M) * D, b + d, M - d + a, T - d + a) + dl;
    }
    return 0.0;
}

RegionId classify_region(const LinkCapacities& c) {
    RegionId r;
    r.delta_sign = classify_delta(c);
    if (r.delta_sign != Sign::positive) {
        r.gamma_sign = classify_gamma(c);
        if (r.gamma_sign != Sign::positive) {
            if (c.C02 <= c.C01) {
                r.index = 1;
                r.subcondition = "C02<=C01";
            } else if (c.C01 <= 1.0) {
                r.index = 2;
                r.subcondition = "C02>C01, C01<=1";
            } else {
                r.index = 3;
                r.subcondition = "C02>C01, C01>1";
            }
        } else {
            if (c.C01 <= c.C02) {
                r.index = 4;
                r.subcondition = "C01<=C02";
            } else if (c.C02 <= 1.0) {
                r.index = 5;
                r.subcondition = "C01>C02, C02<=1";
            } else {
                r.index = 6;
                r.subcondition = "C01>C02, C02>1";
            }
        }
        return r;
    }
    r.gamma_sign = classify_gamma_prime(c);
    const bool coherent_within = c.delta <= 0.0;  // C123 <= C13 + C23
    if (r.gamma_sign != Sign::positive) {
        if (c.C23 <= c.C13) {
            r.index = 7;
            r.subcondition = "C23<=C13";
        } else if (c.C13 <= 1.0) {
            r.index = coherent_within ? 8 : 9;
            r.subcondition = coherent_within ? "C23>C13, C13<=1, C123<=C13+C23" : "C23>C13, C13<=1, C123>C13+C23";
        } else {
            r.index = 10;
            r.subcondition = "C23>C13, C13>1";
        }
    } else {
        if (c.C13 <= c.C23) {
            r.index = 11;
            r.subcondition = "C13<=C23";
        } else if (c.C23 <= 1.0) {
            r.index = coherent_within ? 12 : 13;
            r.subcondition = coherent_within ? "C13>C23, C23<=1, C123<=C13+C23" : "C13>C23, C23<=1, C123>C13+C23";
        } else {
            r.index = 14;
            r.subcondition = "C13>C23, C23>1";
        }
    }
    return r;
}

SchemeId recommended_scheme(int region_index) {
    switch (region_index) {
        case 3:
        case 6: return SchemeId::mdf_bc;
        case 1:
        case 2:
        case 4:
        case 5: return SchemeId::mdf;
        default: return SchemeId::mdf_mac;
    }
}

GapSymbol recommended_gap_symbol(int region_index) {
    switch (region_index) {
        case 1: return GapSymbol::k1;
        case 2: return GapSymbol::k5;
        case 3: return GapSymbol::bc1;
        case 4: return GapSymbol::k2;
        case 5: return GapSymbol::k6;
        case 6: return GapSymbol::bc2;
        default: return region_index <= 10 ? GapSymbol::mac1 : GapSymbol::mac2;
    }
}

double gap_guarantee(const LinkCapacities& caps, int region_index) {
    if (region_index == 8 || region_index == 12) return 0.5;
    return 0.5 + caps.delta;
}

double gap_formula(const LinkCapacities& caps, const RegionId& region) {
    if (classify_region(caps).index != region.index) {
        throw std::invalid_argument("gap_formula: region does not match the capacities");
    }
    return gap_value(caps, recommended_gap_symbol(region.index));
}

RateReport analyze(const ChannelGains& gains) { return analyze(gains, derive(gains)); }

RateReport analyze(const ChannelGains& gains, const LinkCapacities& caps) {
    RateReport r;
    r.gains = gains;
    r.caps = caps;
    r.region = classify_region(r.caps);
    r.mdf = mdf(r.caps);
    if (r.region.delta_sign != Sign::positive) r.mdf_bc = mdf_bc(r.caps, gains);
    if (r.region.delta_sign != Sign::negative) r.mdf_mac = mdf_mac(r.caps);
    switch (recommended_scheme(r.region.index)) {
        case SchemeId::mdf: r.achievable = r.mdf; break;
        case SchemeId::mdf_bc: r.achievable = *r.mdf_bc; break;
        case SchemeId::mdf_mac: r.achievable = *r.mdf_mac; break;
    }
    r.upper = upper_bound(r.caps);
    r.certificate = verify_dual_feasibility(r.caps, r.upper);
    r.lp_optimum = lp::cutset_optimum(r.caps);
    r.gap_symbol = recommended_gap_symbol(r.region.index);
    r.gap_formula_value = gap_value(r.caps, r.gap_symbol);
    r.gap_guarantee = gap_guarantee(r.caps, r.region.index);
    r.measured_gap = r.upper.value - r.achievable.rate;
    return r;
}

std::vector<std::string> check_report(const RateReport& r) {
    std::vector<std::string> v;
    const auto tag = [&](const std::string& what) { return "region " + std::to_string(r.region.index) + ": " + what; };
    if (!(r.achievable.rate >= -1e-12)) v.push_back(tag("negative achievable rate"));
    if (!r.achievable.schedule.valid()) v.push_back(tag("schedule off the simplex"));
    if (!(r.achievable.rate <= r.lp_optimum + report_tolerance)) v.push_back(tag("achievable rate above the cut-set optimum"));
    if (!(r.lp_optimum <= r.upper.value + report_tolerance)) v.push_back(tag("cut-set optimum above the upper bound"));
    if (!(r.measured_gap <= r.gap_guarantee + report_tolerance)) v.push_back(tag("gap above its guarantee"));
    if (!(std::abs(r.measured_gap - r.gap_formula_value) <= report_tolerance)) {
        v.push_back(tag("measured gap differs from " + to_string(r.gap_symbol)));
    }
    if (!r.certificate.passed) {
        for (const auto& f : r.certificate.failures) v.push_back(tag("certificate: " + f));
    }
    return v;
}

ChannelGains sample_gains(const SweepSpec& spec, std::size_t index) {
    const auto s = static_cast<std::uint64_t>(spec.seed);
    const auto i = static_cast<std::uint64_t>(index);
    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32), static_cast<std::uint32_t>(i),
                      static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 gen(seq);
    const double lo = std::log(spec.gain_min);
    const double hi = std::log(spec.gain_max);
    auto draw = [&] {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return std::exp(lo + u * (hi - lo));
    };
    ChannelGains g;
    g.g01 = draw();
    g.g02 = draw();
    g.g13 = draw();
    g.g23 = draw();
    return g;
}

SweepSummary sweep(const SweepSpec& spec, const std::function<void(std::size_t, const RateReport&)>& sink) {
    if (spec.count < 1) throw std::invalid_argument("sweep: count must be at least 1");
    if (!(spec.gain_min > 0.0 && spec.gain_max >= spec.gain_min && std::isfinite(spec.gain_max))) {
        throw std::invalid_argument("sweep: gain range must satisfy 0 < min <= max < infinity");
    }
    SweepSummary sum;
    sum.max_excess_by_region.fill(-std::numeric_limits<double>::infinity());

    const unsigned workers = std::max(1u, spec.workers);
    constexpr std::size_t chunk = 2048;
    std::vector<RateReport> buffer;
    for (std::size_t start = 0; start < spec.count; start += chunk) {
        const std::size_t n = std::min(chunk, spec.count - start);
        buffer.assign(n, RateReport{});
        std::vector<std::exception_ptr> errors(workers);
        auto work = [&](unsigned w) {
            try {
                for (std::size_t k = w; k < n; k += workers) buffer[k] = analyze(sample_gains(spec, start + k));
            } catch (...) {
                errors[w] = std::current_exception();
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
        for (std::size_t k = 0; k < n; ++k) {
            const RateReport& r = buffer[k];
            const int slot = r.region.index - 1;
            ++sum.count;
            ++sum.occupancy[slot];
            sum.max_gap = std::max(sum.max_gap, r.measured_gap);
            sum.max_delta = std::max(sum.max_delta, r.caps.delta);
            sum.max_gap_by_region[slot] = std::max(sum.max_gap_by_region[slot], r.measured_gap);
            sum.max_excess_by_region[slot] = std::max(sum.max_excess_by_region[slot], r.measured_gap - r.gap_guarantee);
            const auto problems = check_report(r);
            if (!problems.empty()) {
                ++sum.violations;
                for (const auto& p : problems) {
                    if (sum.violation_messages.size() < kept_messages) {
                        sum.violation_messages.push_back("sample " + std::to_string(start + k) + ", " + p);
                    }
                }
            }
            if (sink) sink(start + k, r);
        }
    }
    return sum;
}

MdfGapStudy mdf_gap_study(const LinkCapacities& c, const ChannelGains& gains) {
    MdfGapStudy s;
    const RegionId region = classify_region(c);
    s.region_index = region.index;
    const UpperBound ub = upper_bound(c);
    s.mdf_rate = mdf(c).rate;
    s.mdf_gap = ub.value - s.mdf_rate;

    const double none = std::numeric_limits<double>::infinity();
    switch (region.index) {
        case 1: s.mdf_symbol = GapSymbol::k1; s.mdf_guarantee = 0.5 + c.delta; break;
        case 2: s.mdf_symbol = GapSymbol::k5; s.mdf_guarantee = 0.5 + c.delta; break;
        case 3: s.mdf_symbol = GapSymbol::k5; s.mdf_guarantee = none; break;
        case 4: s.mdf_symbol = GapSymbol::k2; s.mdf_guarantee = 0.5 + c.delta; break;
        case 5: s.mdf_symbol = GapSymbol::k6; s.mdf_guarantee = 0.5 + c.delta; break;
        case 6: s.mdf_symbol = GapSymbol::k6; s.mdf_guarantee = none; break;
        case 7: s.mdf_symbol = GapSymbol::k3; s.mdf_guarantee = 1.0 + c.delta; break;
        case 8: s.mdf_symbol = GapSymbol::k7; s.mdf_guarantee = 1.0; break;
        case 9:
        case 10: s.mdf_symbol = GapSymbol::k7; s.mdf_guarantee = none; break;
        case 11: s.mdf_symbol = GapSymbol::k4; s.mdf_guarantee = 1.0 + c.delta; break;
        case 12: s.mdf_symbol = GapSymbol::k8; s.mdf_guarantee = 1.0; break;
        default: s.mdf_symbol = GapSymbol::k8; s.mdf_guarantee = none; break;
    }
    s.mdf_gap_formula = gap_value(c, s.mdf_symbol);
    // The printed k7/k8 omit delta because their own rows have delta = 0.
    if (s.mdf_symbol == GapSymbol::k7 || s.mdf_symbol == GapSymbol::k8) s.mdf_gap_formula += c.delta;

    if (region.delta_sign != Sign::positive) {
        const SchemeResult bc = mdf_bc(c, gains);
        s.enhanced_scheme = SchemeId::mdf_bc;
        s.enhanced_rate = bc.rate;
    } else {
        const SchemeResult mac = mdf_mac(c);
        s.enhanced_scheme = SchemeId::mdf_mac;
        s.enhanced_rate = mac.rate;
    }
    s.enhanced_gap = ub.value - s.enhanced_rate;
    s.enhanced_guarantee = region.index >= 7 ? gap_guarantee(c, region.index) : 0.5 + c.delta;

    s.symmetric = c.C01 == c.C02 && c.C13 == c.C23;
    s.partially_symmetric = (c.C01 == c.C02 && region.delta_sign == Sign::negative) ||
                            (c.C13 == c.C23 && region.delta_sign == Sign::positive);
    if (s.symmetric) {
        s.note = "symmetric: MDF gap at most 1+delta";
    } else if (s.partially_symmetric) {
        s.note = "partially symmetric: MDF gap below 1+delta";
    }
    return s;
}

double mdf_gap_growth_bound(double alpha, double beta, double x) {
    return (alpha * alpha - beta) * (beta - 1.0) / ((alpha + beta) * (alpha + beta) * (alpha + 1.0)) * x;
}

double gain_for_capacity(double c) { return std::expm1(2.0 * c * std::log(2.0)); }

ChannelGains mdf_gap_family(double alpha, double beta, double x) {
    return ChannelGains{gain_for_capacity(beta * x), gain_for_capacity(x), gain_for_capacity(alpha * x),
                        gain_for_capacity(alpha * x)};
}

}  // namespace diamond
