#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "diamond/channel.hpp"

namespace diamond {

/// Time fractions of the four half-duplex modes:
/// t1 broadcast (both relays listen), t2 relay 2 forwards while relay 1 listens,
/// t3 relay 1 forwards while relay 2 listens, t4 multiple access (both relays forward).
struct Schedule {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double t4 = 0.0;

    double sum() const { return t1 + t2 + t3 + t4; }
    std::array<double, 4> as_array() const { return {t1, t2, t3, t4}; }
    static Schedule from_array(const std::array<double, 4>& t) { return {t[0], t[1], t[2], t[3]}; }
    /// Components in [-1e-12, 1 + 1e-12] and sum within 1e-9 of 1.
    bool valid() const;
};

/// Superposition power split for the broadcast mode: eta is the fraction of source
/// power on the weaker relay's layer; u and v are the rates delivered to relays 1 and 2.
struct BroadcastSplit {
    double eta = 0.0;
    double u = 0.0;
    double v = 0.0;
    bool uses_eta1 = true;  // eta = 1/(g01+1) when true, 1/(g02+1) otherwise
};

/// Rates carried by relays 1 and 2 in the multiple-access mode.
struct MacSplit {
    double R1 = 0.0;
    double R2 = 0.0;
};

enum class SchemeId { mdf, mdf_bc, mdf_mac };

std::string to_string(SchemeId id);

struct SchemeResult {
    SchemeId scheme = SchemeId::mdf;
    double rate = 0.0;
    Schedule schedule;
    std::variant<std::monostate, BroadcastSplit, MacSplit> split;
    std::string case_label;
};

/// Guarded ratio: returns 0 when |den| < 1e-12.
double guarded_ratio(double num, double den);

/// Relay 1 receives for lambda1 = C13/(C01+C13) of the time, fully utilizing branch 1.
double mdf_lambda1(const LinkCapacities& caps);
/// Relay 1 receives for lambda2 = C02/(C02+C23) of the time, fully utilizing branch 2.
double mdf_lambda2(const LinkCapacities& caps);
/// Two-mode rate min(l*C01, (1-l)*C13) + min((1-l)*C02, l*C23), relay 1 listening for l.
double mdf_rate_at(const LinkCapacities& caps, double lambda);

/// Two-mode relaying: relays alternate listening and forwarding.
SchemeResult mdf(const LinkCapacities& caps);

BroadcastSplit broadcast_split(const LinkCapacities& caps, const ChannelGains& gains);

/// (u, v) for an arbitrary eta, with the relay listed first decoded through its own layer.
/// relay2_stronger selects which relay cancels the other's layer.
std::pair<double, double> superposition_rates(const ChannelGains& gains, double eta, bool relay2_stronger);

/// Two-mode relaying plus a broadcast mode. Requires Delta not positive (tolerance-classified).
SchemeResult mdf_bc(const LinkCapacities& caps, const ChannelGains& gains);

/// Two-mode relaying plus a multiple-access mode. Requires Delta not negative.
SchemeResult mdf_mac(const LinkCapacities& caps);

/// Rate of the general four-mode scheme for schedule t, broadcast rates (u, v) and
/// multiple-access rates (R1, R2):
/// min(t1 u + t2 C01, t3 C13 + R1) + min(t1 v + t3 C02, t2 C23 + R2).
double general_rate(const LinkCapacities& caps, const Schedule& t, double u, double v, double R1, double R2);

/// general_rate evaluated at a scheme's own schedule and split.
double general_rate(const LinkCapacities& caps, const SchemeResult& result);

/// True when (R1, R2) lies in the multiple-access region scaled by t4, within tol.
bool in_mac_region(const LinkCapacities& caps, double t4, const MacSplit& split, double tol = 1e-12);

/// Brute-force maximum of the general scheme over a simplex grid of schedules
/// (spacing 1/resolution) and a power-split grid. For each schedule and split the
/// multiple-access rates are chosen optimally in closed form.
double general_achievable_oracle(const LinkCapacities& caps, const ChannelGains& gains, int resolution);

}  // namespace diamond
