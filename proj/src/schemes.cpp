#include "diamond/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace diamond {

namespace {

constexpr double ratio_floor = 1e-12;

double cap(double x) { return capacity_of(std::max(x, 0.0)); }

Schedule two_mode(double lambda) { return Schedule{0.0, lambda, 1.0 - lambda, 0.0}; }

}  // namespace

std::string to_string(SchemeId id) {
    switch (id) {
        case SchemeId::mdf: return "MDF";
        case SchemeId::mdf_bc: return "MDF-BC";
        case SchemeId::mdf_mac: return "MDF-MAC";
    }
    return "?";
}

bool Schedule::valid() const {
    for (double t : as_array()) {
        if (!(t >= -1e-12 && t <= 1.0 + 1e-12)) return false;
    }
    return std::abs(sum() - 1.0) <= 1e-9;
}

double guarded_ratio(double num, double den) { return std::abs(den) < ratio_floor ? 0.0 : num / den; }

double mdf_lambda1(const LinkCapacities& c) { return guarded_ratio(c.C13, c.C01 + c.C13); }

double mdf_lambda2(const LinkCapacities& c) { return guarded_ratio(c.C02, c.C02 + c.C23); }

double mdf_rate_at(const LinkCapacities& c, double lambda) {
    return std::min(lambda * c.C01, (1.0 - lambda) * c.C13) + std::min((1.0 - lambda) * c.C02, lambda * c.C23);
}

SchemeResult mdf(const LinkCapacities& c) {
    SchemeResult r;
    r.scheme = SchemeId::mdf;
    double lambda = 0.0;
    if (classify_delta(c) != Sign::positive) {
        if (c.C02 <= c.C01) {
            r.rate = guarded_ratio(c.C01 * (c.C02 + c.C13), c.C01 + c.C13);
            lambda = mdf_lambda1(c);
            r.case_label = "Delta<=0, C02<=C01";
        } else {
            r.rate = guarded_ratio(c.C02 * (c.C01 + c.C23), c.C02 + c.C23);
            lambda = mdf_lambda2(c);
            r.case_label = "Delta<=0, C02>C01";
        }
    } else {
        if (c.C23 <= c.C13) {
            r.rate = guarded_ratio(c.C13 * (c.C01 + c.C23), c.C01 + c.C13);
            lambda = mdf_lambda1(c);
            r.case_label = "Delta>0, C23<=C13";
        } else {
            r.rate = guarded_ratio(c.C23 * (c.C02 + c.C13), c.C02 + c.C23);
            lambda = mdf_lambda2(c);
            r.case_label = "Delta>0, C23>C13";
        }
    }
    r.schedule = two_mode(lambda);
    return r;
}

std::pair<double, double> superposition_rates(const ChannelGains& g, double eta, bool relay2_stronger) {
    if (relay2_stronger) {
        return {cap(g.g01) - cap(eta * g.g01), cap(eta * g.g02)};
    }
    return {cap(eta * g.g01), cap(g.g02) - cap(eta * g.g02)};
}

BroadcastSplit broadcast_split(const LinkCapacities& c, const ChannelGains& g) {
    BroadcastSplit s;
    if (c.C02 >= c.C01) {
        s.uses_eta1 = true;
        s.eta = 1.0 / (g.g01 + 1.0);
        s.u = c.C01 - c.zeta1;
        s.v = c.C012 - c.C01;
    } else {
        s.uses_eta1 = false;
        s.eta = 1.0 / (g.g02 + 1.0);
        s.u = c.C012 - c.C02;
        s.v = c.C02 - c.zeta2;
    }
    s.u = std::max(s.u, 0.0);
    s.v = std::max(s.v, 0.0);
    return s;
}

SchemeResult mdf_bc(const LinkCapacities& c, const ChannelGains& g) {
    const Sign ds = classify_delta(c);
    if (ds == Sign::positive) throw std::domain_error("mdf_bc requires Delta <= 0");
    const BroadcastSplit s = broadcast_split(c, g);

    SchemeResult r;
    r.scheme = SchemeId::mdf_bc;
    r.split = s;
    if (ds == Sign::zero) {
        const SchemeResult base = mdf(c);
        r.rate = base.rate;
        r.schedule = base.schedule;
        r.case_label = "Delta=0, broadcast mode unused";
        return r;
    }
    // Delta < 0 strictly, so the denominator is at least -Delta > 0.
    const double den = (c.C01 + c.C13) * s.v + (c.C02 + c.C23) * s.u - c.Delta;
    r.schedule.t1 = -c.Delta / den;
    r.schedule.t2 = (c.C13 * s.v + c.C02 * s.u) / den;
    r.schedule.t3 = (c.C01 * s.v + c.C23 * s.u) / den;
    r.schedule.t4 = 0.0;
    r.rate = (c.C13 * (c.C01 + c.C23) * s.v + c.C23 * (c.C02 + c.C13) * s.u) / den;
    r.case_label = s.uses_eta1 ? "Delta<0, eta1 (C02>=C01)" : "Delta<0, eta2 (C01>C02)";
    return r;
}

SchemeResult mdf_mac(const LinkCapacities& c) {
    const Sign ds = classify_delta(c);
    if (ds == Sign::negative) throw std::domain_error("mdf_mac requires Delta >= 0");

    SchemeResult r;
    r.scheme = SchemeId::mdf_mac;
    if (ds == Sign::zero) {
        const SchemeResult base = mdf(c);
        r.rate = base.rate;
        r.schedule = base.schedule;
        r.split = MacSplit{};
        r.case_label = "Delta=0, multiple-access mode unused";
        return r;
    }
    // Delta > 0 forces C01, C02 > 0, so each denominator is at least C01*C02.
    MacSplit m;
    if (classify_gamma_prime(c) != Sign::positive) {
        const double den = (c.C01 + c.C13) * (c.CMAC - c.C13 + c.C02);
        r.schedule.t2 = c.C13 / (c.C01 + c.C13);
        r.schedule.t3 = (c.C01 * (c.CMAC - c.C13) + c.C13 * c.C23) / den;
        r.schedule.t4 = c.Delta / den;
        r.rate = c.C01 * (c.C02 + c.C13) / (c.C01 + c.C13) - c.C02 * c.Delta / den;
        m.R1 = r.schedule.t4 * c.C13;
        m.R2 = r.schedule.t4 * (c.CMAC - c.C13);
        r.case_label = "Delta>0, Gamma'<=0";
    } else {
        const double den = (c.C02 + c.C23) * (c.CMAC - c.C23 + c.C01);
        r.schedule.t2 = (c.C02 * (c.CMAC - c.C23) + c.C13 * c.C23) / den;
        r.schedule.t3 = c.C23 / (c.C02 + c.C23);
        r.schedule.t4 = c.Delta / den;
        r.rate = c.C02 * (c.C01 + c.C23) / (c.C02 + c.C23) - c.C01 * c.Delta / den;
        m.R2 = r.schedule.t4 * c.C23;
        m.R1 = r.schedule.t4 * (c.CMAC - c.C23);
        r.case_label = "Delta>0, Gamma'>0";
    }
    r.split = m;
    return r;
}

double general_rate(const LinkCapacities& c, const Schedule& t, double u, double v, double R1, double R2) {
    return std::min(t.t1 * u + t.t2 * c.C01, t.t3 * c.C13 + R1) + std::min(t.t1 * v + t.t3 * c.C02, t.t2 * c.C23 + R2);
}

double general_rate(const LinkCapacities& c, const SchemeResult& result) {
    double u = 0.0, v = 0.0, R1 = 0.0, R2 = 0.0;
    if (const auto* b = std::get_if<BroadcastSplit>(&result.split)) {
        u = b->u;
        v = b->v;
    } else if (const auto* m = std::get_if<MacSplit>(&result.split)) {
        R1 = m->R1;
        R2 = m->R2;
    }
    return general_rate(c, result.schedule, u, v, R1, R2);
}

bool in_mac_region(const LinkCapacities& c, double t4, const MacSplit& s, double tol) {
    return s.R1 >= -tol && s.R2 >= -tol && s.R1 <= t4 * c.C13 + tol && s.R2 <= t4 * c.C23 + tol &&
           s.R1 + s.R2 <= t4 * c.CMAC + tol;
}

double general_achievable_oracle(const LinkCapacities& c, const ChannelGains& g, int resolution) {
    if (resolution < 50) throw std::invalid_argument("general_achievable_oracle: resolution must be at least 50");

    // Broadcast rates over an eta grid, plus the two named power splits.
    const bool relay2_stronger = g.g01 < g.g02;
    const int eta_steps = resolution / 4;
    std::vector<std::pair<double, double>> uv;
    for (int k = 0; k <= eta_steps; ++k) uv.push_back(superposition_rates(g, double(k) / eta_steps, relay2_stronger));
    uv.push_back(superposition_rates(g, 1.0 / (g.g01 + 1.0), relay2_stronger));
    uv.push_back(superposition_rates(g, 1.0 / (g.g02 + 1.0), relay2_stronger));

    double best = 0.0;
    const double step = 1.0 / resolution;
    for (int i1 = 0; i1 <= resolution; ++i1) {
        const double t1 = i1 * step;
        for (int i2 = 0; i1 + i2 <= resolution; ++i2) {
            const double t2 = i2 * step;
            for (int i3 = 0; i1 + i2 + i3 <= resolution; ++i3) {
                const double t3 = i3 * step;
                const double t4 = (resolution - i1 - i2 - i3) * step;
                const double f1 = t4 * c.C13, f2 = t4 * c.C23, f12 = t4 * c.CMAC;
                const double b1 = t3 * c.C13, b2 = t2 * c.C23;
                const std::size_t n_uv = i1 == 0 ? 1 : uv.size();
                for (std::size_t k = 0; k < n_uv; ++k) {
                    const double a1 = t1 * uv[k].first + t2 * c.C01;
                    const double a2 = t1 * uv[k].second + t3 * c.C02;
                    // Best (R1, R2) in the scaled multiple-access region.
                    const double d1 = std::max(a1 - b1, 0.0), d2 = std::max(a2 - b2, 0.0);
                    const double extra = std::min(std::min(d1, f1) + std::min(d2, f2), f12);
                    best = std::max(best, std::min(a1, b1) + std::min(a2, b2) + extra);
                }
            }
        }
    }
    return best;
}

}  // namespace diamond
