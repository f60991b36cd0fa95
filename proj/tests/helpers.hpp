#pragma once

#include <cmath>
#include <random>

#include "diamond/channel.hpp"

namespace test {

/// Log-uniform gains in [lo, hi], independent of the library's sampler.
inline diamond::ChannelGains random_gains(std::mt19937_64& rng, double lo = 1e-2, double hi = 1e4) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return {std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))};
}

inline double gain_of(double capacity) { return std::pow(2.0, 2.0 * capacity) - 1.0; }

}  // namespace test
