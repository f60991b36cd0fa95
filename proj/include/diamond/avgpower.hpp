#pragma once

#include <array>
#include <vector>

#include "diamond/channel.hpp"
#include "diamond/schemes.hpp"

namespace diamond {

/// Per-mode transmit powers under unit average budgets. Index i is mode i+1.
/// The source is silent in mode 4, relay 1 transmits in modes 3 and 4, relay 2 in 2 and 4.
struct PowerProfile {
    std::array<double, 4> source{};
    std::array<double, 4> relay1{};
    std::array<double, 4> relay2{};

    /// Each transmitter's time-averaged power is at most 1 + tol under schedule t.
    bool within_budget(const Schedule& t, double tol = 1e-9) const;
};

/// The four cuts with mode-dependent powers.
std::array<double, 4> avg_power_cuts(const ChannelGains& gains, const Schedule& t, const PowerProfile& p);

struct AvgPowerResult {
    double value = 0.0;  // min of the cuts at the best grid point; a feasible lower estimate
    Schedule schedule;
    PowerProfile profile;
};

/// Grid maximization over schedules (simplex spacing 1/schedule_resolution, plus the
/// constant-power optimal schedule) and each transmitter's energy split across its modes
/// (simplex spacing 1/power_resolution, plus the split proportional to mode durations).
/// Both resolutions must be >= 8.
AvgPowerResult avg_power_cutset(const ChannelGains& gains, int schedule_resolution, int power_resolution);

/// t*C(g(1-t)/((1+g)t)), which equals t*C(g/t) - t*C(g): the most a single cut term can
/// gain by pooling a unit budget into a mode of length t. At most 1/(2 ln 2).
double per_term_gain(double t, double g);

inline constexpr double per_term_limit = 0.72134752044448170;  // 1/(2 ln 2)
inline constexpr double avg_power_slack_limit = 2.8853900817779268;  // 2/ln 2

struct SlackReport {
    double avg_power_value = 0.0;
    double constant_optimum = 0.0;
    double slack = 0.0;          // avg_power_value - constant_optimum
    double worst_per_term = 0.0; // largest per_term_gain over the sampled (t, g)
    bool monotone = true;        // avg_power_value >= constant_optimum - 1e-9
    bool passed = true;
};

/// Checks the slack against 2/ln 2 (+1e-6) and the per-term gain on a (t, g) grid that
/// includes the gains of this channel.
SlackReport verify_slack(const ChannelGains& gains, int schedule_resolution, int power_resolution);

}  // namespace diamond
