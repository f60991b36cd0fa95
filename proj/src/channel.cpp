#include "diamond/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace diamond {

namespace {

constexpr double ln2 = 0.69314718055994530942;

double cap(double x) { return 0.5 * std::log1p(x) / ln2; }

Sign sign_with_band(double value, double scale, double tol) {
    if (std::abs(value) <= tol * scale) return Sign::zero;
    return value < 0.0 ? Sign::negative : Sign::positive;
}

}  // namespace

void ChannelGains::validate() const {
    for (double g : {g01, g02, g13, g23}) {
        if (!std::isfinite(g) || g < 0.0) {
            throw std::domain_error("channel gains must be finite and non-negative");
        }
    }
}

std::string to_string(Sign s) {
    switch (s) {
        case Sign::negative: return "NEG";
        case Sign::zero: return "ZERO";
        case Sign::positive: return "POS";
    }
    return "?";
}

double max_coherent_excess() { return 0.5 * std::log2(4.0 / 3.0); }

double capacity_of(double gain) {
    if (!std::isfinite(gain) || gain < 0.0) {
        throw std::domain_error("capacity_of: gain must be finite and non-negative");
    }
    return cap(gain);
}

LinkCapacities derive(const ChannelGains& gains) {
    gains.validate();
    const double a = gains.g13;
    const double b = gains.g23;

    LinkCapacities c;
    c.C01 = cap(gains.g01);
    c.C02 = cap(gains.g02);
    c.C13 = cap(a);
    c.C23 = cap(b);
    c.C012 = cap(gains.g01 + gains.g02);
    const double coherent = std::sqrt(a) + std::sqrt(b);
    c.C123 = cap(coherent * coherent);
    c.CMAC = cap(a + b);

    c.Delta = c.C01 * c.C02 - c.C13 * c.C23;
    c.Gamma = c.C23 * (c.C012 - c.C02) - c.C13 * (c.C012 - c.C01);
    c.GammaPrime = c.C02 * (c.C123 - c.C23) - c.C01 * (c.C123 - c.C13);

    // C123 - C13 - C23 = C((2 sqrt(ab) - ab) / ((1+a)(1+b))), evaluated without cancellation.
    const double root = std::sqrt(a * b);
    const double excess = (2.0 * root - a * b) / ((1.0 + a) * (1.0 + b));
    c.delta = excess > 0.0 ? cap(excess) : 0.0;

    c.zeta1 = cap(gains.g01 / (gains.g01 + 1.0));
    c.zeta2 = cap(gains.g02 / (gains.g02 + 1.0));
    return c;
}

Sign classify_delta(const LinkCapacities& caps, double tol) {
    const double scale = std::max({1.0, caps.C01 * caps.C02, caps.C13 * caps.C23});
    return sign_with_band(caps.Delta, scale, tol);
}

Sign classify_gamma(const LinkCapacities& caps, double tol) {
    const double scale = std::max(std::abs(caps.C23 * (caps.C012 - caps.C02)),
                                  std::abs(caps.C13 * (caps.C012 - caps.C01)));
    return sign_with_band(caps.Gamma, scale, tol);
}

Sign classify_gamma_prime(const LinkCapacities& caps, double tol) {
    const double scale = std::max(std::abs(caps.C02 * (caps.C123 - caps.C23)),
                                  std::abs(caps.C01 * (caps.C123 - caps.C13)));
    return sign_with_band(caps.GammaPrime, scale, tol);
}

ChannelGains swap_relays(const ChannelGains& gains) {
    return ChannelGains{gains.g02, gains.g01, gains.g23, gains.g13};
}

LinkCapacities swap_relays(const LinkCapacities& caps) {
    LinkCapacities s = caps;
    std::swap(s.C01, s.C02);
    std::swap(s.C13, s.C23);
    std::swap(s.zeta1, s.zeta2);
    s.Gamma = -caps.Gamma;
    s.GammaPrime = -caps.GammaPrime;
    return s;
}

}  // namespace diamond
