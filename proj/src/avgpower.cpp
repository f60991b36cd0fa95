#include "diamond/avgpower.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diamond/lp.hpp"

namespace diamond {

namespace {

/// t*C(x/t), taken as 0 for an empty mode.
double term(double t, double x) { return t > 0.0 ? t * capacity_of(x / t) : 0.0; }

struct Split {
    std::array<double, 4> e{};  // energy fraction per mode
};

/// Energy splits over the listed modes: a simplex grid plus the duration-proportional split.
std::vector<Split> splits(const std::vector<int>& modes, const Schedule& t, int n) {
    std::vector<Split> out;
    const auto ta = t.as_array();
    if (modes.size() == 3) {
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; i + j <= n; ++j) {
                Split s;
                s.e[modes[0]] = double(i) / n;
                s.e[modes[1]] = double(j) / n;
                s.e[modes[2]] = double(n - i - j) / n;
                out.push_back(s);
            }
        }
    } else {
        for (int i = 0; i <= n; ++i) {
            Split s;
            s.e[modes[0]] = double(i) / n;
            s.e[modes[1]] = double(n - i) / n;
            out.push_back(s);
        }
    }
    double busy = 0.0;
    for (int m : modes) busy += ta[m];
    Split p;
    for (int m : modes) p.e[m] = busy > 0.0 ? ta[m] / busy : 1.0 / modes.size();
    out.push_back(p);
    return out;
}

double power_of(double e, double t) { return t > 0.0 ? e / t : 0.0; }

}  // namespace

bool PowerProfile::within_budget(const Schedule& t, double tol) const {
    const auto ta = t.as_array();
    double s = 0.0, r1 = 0.0, r2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (source[i] < 0.0 || relay1[i] < 0.0 || relay2[i] < 0.0) return false;
        s += ta[i] * source[i];
        r1 += ta[i] * relay1[i];
        r2 += ta[i] * relay2[i];
    }
    return s <= 1.0 + tol && r1 <= 1.0 + tol && r2 <= 1.0 + tol && source[3] == 0.0 && relay1[0] == 0.0 &&
           relay1[1] == 0.0 && relay2[0] == 0.0 && relay2[2] == 0.0;
}

std::array<double, 4> avg_power_cuts(const ChannelGains& g, const Schedule& t, const PowerProfile& p) {
    const auto& s = p.source;
    const auto& r1 = p.relay1;
    const auto& r2 = p.relay2;
    auto c = [](double x) { return capacity_of(x); };
    const double coherent = std::pow(std::sqrt(g.g13 * r1[3]) + std::sqrt(g.g23 * r2[3]), 2);
    return {t.t1 * c((g.g01 + g.g02) * s[0]) + t.t2 * c(g.g01 * s[1]) + t.t3 * c(g.g02 * s[2]),
            t.t1 * c(g.g01 * s[0]) + t.t2 * (c(g.g01 * s[1]) + c(g.g23 * r2[1])) + t.t4 * c(g.g23 * r2[3]),
            t.t1 * c(g.g02 * s[0]) + t.t3 * (c(g.g02 * s[2]) + c(g.g13 * r1[2])) + t.t4 * c(g.g13 * r1[3]),
            t.t2 * c(g.g23 * r2[1]) + t.t3 * c(g.g13 * r1[2]) + t.t4 * c(coherent)};
}

AvgPowerResult avg_power_cutset(const ChannelGains& g, int schedule_resolution, int power_resolution) {
    if (schedule_resolution < 8 || power_resolution < 8) throw std::invalid_argument("resolutions must be >= 8");
    g.validate();

    std::vector<Schedule> schedules;
    const int n = schedule_resolution;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b)
            for (int c = 0; a + b + c <= n; ++c)
                schedules.push_back({double(a) / n, double(b) / n, double(c) / n, double(n - a - b - c) / n});
    {
        const auto sol = lp::solve_simplex(lp::build_cutset_primal(derive(g)));
        Schedule s{std::max(sol.variables[0], 0.0), std::max(sol.variables[1], 0.0),
                   std::max(sol.variables[2], 0.0), std::max(sol.variables[3], 0.0)};
        const double sum = s.sum();
        schedules.push_back({s.t1 / sum, s.t2 / sum, s.t3 / sum, s.t4 / sum});
    }

    AvgPowerResult best;
    best.value = -1.0;
    std::vector<double> c4;
    for (const Schedule& t : schedules) {
        const auto src = splits({0, 1, 2}, t, power_resolution);
        const auto rel1 = splits({2, 3}, t, power_resolution);  // relay 1 forwards in modes 3 and 4
        const auto rel2 = splits({1, 3}, t, power_resolution);  // relay 2 forwards in modes 2 and 4

        std::vector<double> b2(rel2.size()), b3(rel1.size());
        for (std::size_t k = 0; k < rel2.size(); ++k)
            b2[k] = term(t.t2, g.g23 * rel2[k].e[1]) + term(t.t4, g.g23 * rel2[k].e[3]);
        for (std::size_t k = 0; k < rel1.size(); ++k)
            b3[k] = term(t.t3, g.g13 * rel1[k].e[2]) + term(t.t4, g.g13 * rel1[k].e[3]);
        c4.assign(rel1.size() * rel2.size(), 0.0);
        double max_c4 = 0.0;
        for (std::size_t i = 0; i < rel1.size(); ++i) {
            for (std::size_t k = 0; k < rel2.size(); ++k) {
                const double coh = std::pow(std::sqrt(g.g13 * rel1[i].e[3]) + std::sqrt(g.g23 * rel2[k].e[3]), 2);
                const double v = term(t.t2, g.g23 * rel2[k].e[1]) + term(t.t3, g.g13 * rel1[i].e[2]) + term(t.t4, coh);
                c4[i * rel2.size() + k] = v;
                max_c4 = std::max(max_c4, v);
            }
        }
        const double max_b2 = *std::max_element(b2.begin(), b2.end());
        const double max_b3 = *std::max_element(b3.begin(), b3.end());

        for (const Split& s : src) {
            const double c1 = term(t.t1, (g.g01 + g.g02) * s.e[0]) + term(t.t2, g.g01 * s.e[1]) +
                              term(t.t3, g.g02 * s.e[2]);
            const double a2 = term(t.t1, g.g01 * s.e[0]) + term(t.t2, g.g01 * s.e[1]);
            const double a3 = term(t.t1, g.g02 * s.e[0]) + term(t.t3, g.g02 * s.e[2]);
            if (std::min({c1, a2 + max_b2, a3 + max_b3, max_c4}) <= best.value) continue;
            for (std::size_t i = 0; i < rel1.size(); ++i) {
                const double head = std::min(c1, a3 + b3[i]);
                if (head <= best.value) continue;
                for (std::size_t k = 0; k < rel2.size(); ++k) {
                    const double v = std::min({head, a2 + b2[k], c4[i * rel2.size() + k]});
                    if (v > best.value) {
                        best.value = v;
                        best.schedule = t;
                        for (int m = 0; m < 4; ++m) {
                            best.profile.source[m] = power_of(s.e[m], t.as_array()[m]);
                            best.profile.relay1[m] = power_of(rel1[i].e[m], t.as_array()[m]);
                            best.profile.relay2[m] = power_of(rel2[k].e[m], t.as_array()[m]);
                        }
                    }
                }
            }
        }
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

double per_term_gain(double t, double g) {
    if (!(t > 0.0 && t <= 1.0) || !(g >= 0.0)) throw std::domain_error("per_term_gain needs t in (0, 1] and g >= 0");
    return t * capacity_of(g * (1.0 - t) / ((1.0 + g) * t));
}

SlackReport verify_slack(const ChannelGains& gains, int schedule_resolution, int power_resolution) {
    SlackReport rep;
    const AvgPowerResult r = avg_power_cutset(gains, schedule_resolution, power_resolution);
    rep.avg_power_value = r.value;
    rep.constant_optimum = lp::cutset_optimum(derive(gains));
    rep.slack = rep.avg_power_value - rep.constant_optimum;
    rep.monotone = rep.avg_power_value >= rep.constant_optimum - 1e-9;

    std::vector<double> gs{0.0, 1e-3, 1.0, 1e3, 1e8, gains.g01, gains.g02, gains.g13, gains.g23,
                           gains.g01 + gains.g02};
    for (double gv : gs) {
        for (double t = 1e-6; t <= 1.0; t *= 1.5) rep.worst_per_term = std::max(rep.worst_per_term, per_term_gain(t, gv));
        rep.worst_per_term = std::max(rep.worst_per_term, per_term_gain(1.0, gv));
    }
    rep.passed = rep.monotone && rep.slack <= avg_power_slack_limit + 1e-6 && rep.worst_per_term <= per_term_limit;
    return rep;
}

}  // namespace diamond
