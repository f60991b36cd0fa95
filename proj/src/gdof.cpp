#include "diamond/gdof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diamond/analysis.hpp"

namespace diamond {

void GdofExponents::validate() const {
    for (double a : {a01, a02, a13, a23}) {
        if (!std::isfinite(a) || a < 0.0) throw std::domain_error("GDOF exponents must be finite and >= 0");
    }
}

double GdofExponents::delta_alpha() const { return a01 * a02 - a13 * a23; }

bool GdofExponents::degenerate() const {
    if (delta_alpha() <= 0.0) {
        const double m = std::max(a01, a02);
        return a23 * (m - a02) - a13 * (m - a01) == 0.0;
    }
    const double m = std::max(a13, a23);
    return a02 * (m - a23) - a01 * (m - a13) == 0.0;
}

GdofTable gdof_closed_forms(const GdofExponents& a) {
    a.validate();
    const double a01 = a.a01, a02 = a.a02, a13 = a.a13, a23 = a.a23;
    const double da = a.delta_alpha();
    auto q = guarded_ratio;
    auto q2 = [](double n, double b, double c) { return guarded_ratio(guarded_ratio(n, b), c); };

    GdofTable t;
    t.delta_alpha = da;
    t.mdf = {q(a01 * (a02 + a13), a01 + a13), q(a02 * (a01 + a23), a02 + a23), q(a13 * (a01 + a23), a01 + a13),
             q(a23 * (a02 + a13), a02 + a23)};
    t.up = {t.mdf[2] + q2(a23 * da, a01 + a13, a02 - a01 + a23),
            t.mdf[3] + q2(a13 * da, a02 + a23, a01 - a02 + a13),
            t.mdf[0] - q2(a02 * da, a01 + a13, a23 - a13 + a02),
            t.mdf[1] - q2(a01 * da, a02 + a23, a13 - a23 + a01)};
    t.bc = {q2(a02 * a13 * (a01 + a23) - a01 * a01 * a13 + a01 * a02 * a23, a01 + a13, a02 - a01 + a23),
            q2(a01 * a23 * (a02 + a13) - a02 * a02 * a23 + a01 * a02 * a13, a02 + a23, a01 - a02 + a13)};
    t.mac = {t.mdf[0] - q2(a02 * da, a01 + a13, a23 - a13 + a02),
             t.mdf[1] - q2(a01 * da, a02 + a23, a13 - a23 + a01)};

    if (da <= 0.0) {
        const int k = a01 <= a02 ? 1 : 2;  // Gamma <= 0 iff a01 <= a02
        t.upper_index = k;
        t.scheme = SchemeId::mdf_bc;
        t.scheme_branch = k;
        t.achievable = t.bc[k - 1];
        t.mdf_branch = a02 <= a01 ? 1 : 2;
    } else {
        const int k = a13 <= a23 ? 1 : 2;  // Gamma' <= 0 iff a13 <= a23
        t.upper_index = k + 2;
        t.scheme = SchemeId::mdf_mac;
        t.scheme_branch = k;
        t.achievable = t.mac[k - 1];
        t.mdf_branch = a23 <= a13 ? 3 : 4;
    }
    t.upper = t.up[t.upper_index - 1];
    t.mdf_value = t.mdf[t.mdf_branch - 1];
    if (a.degenerate()) {
        t.mdf_optimal = true;
        t.scheme = SchemeId::mdf;
        t.scheme_branch = t.mdf_branch;
        t.achievable = t.mdf_value;
    }
    return t;
}

std::vector<GdofSample> gdof_numeric(const GdofExponents& alphas, const std::vector<double>& P_grid) {
    alphas.validate();
    for (std::size_t i = 0; i < P_grid.size(); ++i) {
        if (!(P_grid[i] >= 1e2)) throw std::invalid_argument("GDOF grid points must be >= 100");
        if (i > 0 && !(P_grid[i] > P_grid[i - 1])) throw std::invalid_argument("GDOF grid must be increasing");
    }
    std::vector<GdofSample> rows;
    rows.reserve(P_grid.size());
    for (double P : P_grid) {
        const ChannelGains g{std::pow(P, alphas.a01), std::pow(P, alphas.a02), std::pow(P, alphas.a13),
                             std::pow(P, alphas.a23)};
        for (double x : {g.g01, g.g02, g.g13, g.g23}) {
            if (!std::isfinite(x)) throw std::domain_error("gain overflows at P = " + std::to_string(P));
        }
        const RateReport r = analyze(g);
        const double norm = 0.5 * std::log2(P);
        rows.push_back({P, r.achievable.rate / norm, r.upper.value / norm, r.mdf.rate / norm});
    }
    return rows;
}

double multiplexing_gain(const std::function<ChannelGains(double)>& gains_at_snr,
                         const std::vector<double>& snr_grid) {
    if (snr_grid.empty()) throw std::invalid_argument("empty SNR grid");
    for (std::size_t i = 0; i < snr_grid.size(); ++i) {
        if (!(snr_grid[i] > 1.0)) throw std::invalid_argument("SNR grid points must exceed 1");
        if (i > 0 && !(snr_grid[i] > snr_grid[i - 1])) throw std::invalid_argument("SNR grid must be increasing");
    }
    const double snr = snr_grid.back();
    const ChannelGains g = gains_at_snr(snr);
    g.validate();
    return mdf(derive(g)).rate / (0.5 * std::log2(snr));
}

}  // namespace diamond
