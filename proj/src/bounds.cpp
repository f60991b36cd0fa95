#include "diamond/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "diamond/lp.hpp"
#include "diamond/schemes.hpp"

namespace diamond {

namespace {

constexpr double row_tolerance = 1e-7;

/// a / (b * c) with the guard applied to each factor of the denominator.
double gratio2(double num, double b, double c) { return guarded_ratio(guarded_ratio(num, b), c); }

/// Zero-band Gamma or Gamma' can leave a tau entry a rounding error below zero.
void clamp_and_normalize(std::array<double, 4>& tau) {
    double s = 0.0;
    for (double& t : tau) {
        t = std::max(t, 0.0);
        s += t;
    }
    if (s > 0.0) {
        for (double& t : tau) t /= s;
    }
}

UpperBound make(BoundId id, const LinkCapacities& caps, EnlargedLink which, double value_without_delta,
                std::array<double, 4> tau, bool zero_band) {
    UpperBound ub;
    ub.id = id;
    ub.delta_added = caps.delta;
    ub.enlarged = caps.delta > 0.0 ? which : EnlargedLink::none;
    ub.value = value_without_delta + caps.delta;
    if (zero_band) clamp_and_normalize(tau);
    // Every denominator vanishes only when all capacities are zero; any simplex point then works.
    if (tau[0] + tau[1] + tau[2] + tau[3] == 0.0) tau = {0.0, 0.5, 0.5, 0.0};
    ub.tau = tau;
    return ub;
}

}  // namespace

std::string to_string(BoundId id) {
    switch (id) {
        case BoundId::up1: return "UP1";
        case BoundId::up2: return "UP2";
        case BoundId::up3: return "UP3";
        case BoundId::up4: return "UP4";
        case BoundId::capacity_delta0: return "CAPACITY_DELTA0";
    }
    return "?";
}

LinkCapacities enlarge(const LinkCapacities& caps, EnlargedLink which) {
    LinkCapacities e = caps;
    if (which == EnlargedLink::c13) e.C13 += caps.delta;
    if (which == EnlargedLink::c23) e.C23 += caps.delta;
    return e;
}

UpperBound capacity_delta0(const LinkCapacities& c) {
    if (classify_delta(c) != Sign::zero) throw std::domain_error("capacity_delta0 requires Delta = 0");
    UpperBound ub;
    ub.id = BoundId::capacity_delta0;
    ub.value = guarded_ratio(c.C01 * c.C13, c.C01 + c.C13) + guarded_ratio(c.C02 * c.C23, c.C02 + c.C23);
    const bool dead1 = c.C01 + c.C13 < 1e-12;
    const bool dead2 = c.C02 + c.C23 < 1e-12;
    double t2 = guarded_ratio(c.C13, c.C01 + c.C13);
    double t3 = guarded_ratio(c.C23, c.C02 + c.C23);
    if (dead1 && dead2) {
        t2 = t3 = 0.5;
    } else if (dead1) {
        t2 = 1.0 - t3;
    } else if (dead2) {
        t3 = 1.0 - t2;
    }
    ub.tau = {0.0, t2, t3, 0.0};
    clamp_and_normalize(ub.tau);
    return ub;
}

UpperBound upper_bound_up1(const LinkCapacities& caps) {
    const LinkCapacities& c = caps;
    const double value = guarded_ratio(c.C13 * (c.C01 + c.C23), c.C01 + c.C13) +
                         gratio2(c.C23 * c.Delta, c.C012 - c.C01 + c.C23, c.C01 + c.C13);
    // tau on the instance with C13 raised by delta; tau3 = 0.
    const LinkCapacities e = enlarge(c, EnlargedLink::c13);
    const double den_a = e.C01 + e.C13;
    const double den_b = e.C012 - e.C01 + e.C23;
    std::array<double, 4> tau{};
    tau[0] = guarded_ratio(e.C23, den_b);
    tau[1] = gratio2(e.C13 * (e.C012 - e.C01) - e.C23 * (e.C012 - e.C02), den_a, den_b);
    tau[2] = 0.0;
    tau[3] = gratio2(e.C23 * (e.C012 - e.C02) + e.C01 * (e.C012 - e.C01), den_a, den_b);
    return make(BoundId::up1, c, EnlargedLink::c13, value, tau, classify_gamma(c) == Sign::zero);
}

UpperBound upper_bound_up2(const LinkCapacities& caps) {
    const LinkCapacities& c = caps;
    const double value = guarded_ratio(c.C23 * (c.C02 + c.C13), c.C02 + c.C23) +
                         gratio2(c.C13 * c.Delta, c.C012 - c.C02 + c.C13, c.C02 + c.C23);
    // tau on the instance with C23 raised by delta; tau2 = 0.
    const LinkCapacities e = enlarge(c, EnlargedLink::c23);
    const double den_a = e.C02 + e.C23;
    const double den_b = e.C012 - e.C02 + e.C13;
    std::array<double, 4> tau{};
    tau[0] = guarded_ratio(e.C13, den_b);
    tau[1] = 0.0;
    tau[2] = gratio2(e.C23 * (e.C012 - e.C02) - e.C13 * (e.C012 - e.C01), den_a, den_b);
    tau[3] = gratio2(e.C13 * (e.C012 - e.C01) + e.C02 * (e.C012 - e.C02), den_a, den_b);
    return make(BoundId::up2, c, EnlargedLink::c23, value, tau, classify_gamma(c) == Sign::zero);
}

UpperBound upper_bound_up3(const LinkCapacities& caps) {
    const LinkCapacities& c = caps;
    const double value = guarded_ratio(c.C01 * (c.C02 + c.C13), c.C01 + c.C13) -
                         gratio2(c.C02 * c.Delta, c.C123 - c.C13 + c.C02, c.C01 + c.C13);
    // tau on the instance with C23 raised by delta, which only lowers Gamma'; tau2 = 0.
    const LinkCapacities e = enlarge(c, EnlargedLink::c23);
    const double den_a = e.C01 + e.C13;
    const double den_b = e.C123 - e.C13 + e.C02;
    std::array<double, 4> tau{};
    tau[0] = gratio2(e.C02 * (e.C123 - e.C23) + e.C13 * (e.C123 - e.C13), den_a, den_b);
    tau[1] = 0.0;
    tau[2] = gratio2(e.C01 * (e.C123 - e.C13) - e.C02 * (e.C123 - e.C23), den_a, den_b);
    tau[3] = guarded_ratio(e.C02, den_b);
    return make(BoundId::up3, c, EnlargedLink::c23, value, tau, classify_gamma_prime(c) == Sign::zero);
}

UpperBound upper_bound_up4(const LinkCapacities& caps) {
    const LinkCapacities& c = caps;
    const double value = guarded_ratio(c.C02 * (c.C01 + c.C23), c.C02 + c.C23) -
                         gratio2(c.C01 * c.Delta, c.C123 - c.C23 + c.C01, c.C02 + c.C23);
    // tau on the instance with C13 raised by delta, which only raises Gamma'; tau3 = 0.
    const LinkCapacities e = enlarge(c, EnlargedLink::c13);
    const double den_a = e.C02 + e.C23;
    const double den_b = e.C123 - e.C23 + e.C01;
    std::array<double, 4> tau{};
    tau[0] = gratio2(e.C01 * (e.C123 - e.C13) + e.C23 * (e.C123 - e.C23), den_a, den_b);
    tau[1] = gratio2(e.C02 * (e.C123 - e.C23) - e.C01 * (e.C123 - e.C13), den_a, den_b);
    tau[2] = 0.0;
    tau[3] = guarded_ratio(e.C01, den_b);
    return make(BoundId::up4, c, EnlargedLink::c13, value, tau, classify_gamma_prime(c) == Sign::zero);
}

UpperBound upper_bound(const LinkCapacities& caps) {
    if (classify_delta(caps) != Sign::positive) {
        return classify_gamma(caps) != Sign::positive ? upper_bound_up1(caps) : upper_bound_up2(caps);
    }
    return classify_gamma_prime(caps) != Sign::positive ? upper_bound_up3(caps) : upper_bound_up4(caps);
}

double unenlarged_value(const UpperBound& bound) { return bound.value - bound.delta_added; }

double enlargement_cost(const LinkCapacities& caps, const UpperBound& bound) {
    const auto rows = lp::dual_rows(enlarge(caps, bound.enlarged), bound.tau);
    return *std::max_element(rows.begin(), rows.end()) - unenlarged_value(bound);
}

CertificateReport verify_dual_feasibility(const LinkCapacities& caps, const UpperBound& bound) {
    CertificateReport rep;
    const LinkCapacities e = enlarge(caps, bound.enlarged);
    const auto& tau = bound.tau;

    rep.min_tau = *std::min_element(tau.begin(), tau.end());
    rep.tau_sum = tau[0] + tau[1] + tau[2] + tau[3];
    for (std::size_t i = 0; i < 4; ++i) {
        if (!(tau[i] >= -1e-12)) rep.failures.push_back("tau" + std::to_string(i + 1) + " is negative");
    }
    if (!(std::abs(rep.tau_sum - 1.0) <= 1e-9)) rep.failures.push_back("tau does not sum to 1");

    rep.rows = lp::dual_rows(e, tau);
    rep.max_row = *std::max_element(rep.rows.begin(), rep.rows.end());
    for (std::size_t k = 0; k < 4; ++k) {
        if (!(rep.rows[k] <= bound.value + row_tolerance)) {
            rep.failures.push_back("dual row " + std::to_string(k + 1) + " exceeds the bound value");
        }
    }
    rep.enlargement_cost = rep.max_row - unenlarged_value(bound);
    if (!(rep.enlargement_cost <= bound.delta_added + row_tolerance)) {
        rep.failures.push_back("enlargement cost exceeds delta");
    }

    // The one dual row not forced tight by the closed form is held below the bound by a
    // limit on a single tau entry.
    double limit = std::numeric_limits<double>::infinity();
    double entry = 0.0;
    switch (bound.id) {
        case BoundId::up1:
            limit = guarded_ratio(e.C01, e.C123 - e.C23 + e.C01);
            entry = tau[3];
            break;
        case BoundId::up2:
        case BoundId::capacity_delta0:
            limit = guarded_ratio(e.C02, e.C123 - e.C13 + e.C02);
            entry = tau[3];
            break;
        case BoundId::up3:
            limit = guarded_ratio(e.C13, e.C012 - e.C02 + e.C13);
            entry = tau[0];
            break;
        case BoundId::up4:
            limit = guarded_ratio(e.C23, e.C012 - e.C01 + e.C23);
            entry = tau[0];
            break;
    }
    rep.tau_limit_margin = entry > 0.0 ? limit - entry : std::max(limit, 0.0);
    if (!(rep.tau_limit_margin >= -1e-9)) rep.failures.push_back("dual-tau limit violated");

    if ((bound.id == BoundId::up1 || bound.id == BoundId::up2) && e.C123 > e.C13 + e.C23 + 1e-12 && tau[3] > 0.0) {
        rep.failures.push_back("coherent capacity exceeds the enlarged relay capacities");
    }
    rep.passed = rep.failures.empty();
    return rep;
}

}  // namespace diamond
