#pragma once

#include <string>

namespace diamond {

/// Linear power gains of the four links. Unit transmit power and unit noise
/// variance are assumed, so any constant power is folded into the gain.
struct ChannelGains {
    double g01 = 0.0;  // source -> relay 1
    double g02 = 0.0;  // source -> relay 2
    double g13 = 0.0;  // relay 1 -> destination
    double g23 = 0.0;  // relay 2 -> destination

    /// Throws std::domain_error unless all four gains are finite and >= 0.
    void validate() const;
};

/// Link capacities (bits per channel use) and the parameters derived from them.
struct LinkCapacities {
    double C01 = 0.0;
    double C02 = 0.0;
    double C13 = 0.0;
    double C23 = 0.0;
    double C012 = 0.0;  // source broadcasting to both relays, C(g01 + g02)
    double C123 = 0.0;  // coherent relay transmission, C((sqrt g13 + sqrt g23)^2)
    double CMAC = 0.0;  // joint decoding sum rate, C(g13 + g23)

    double Delta = 0.0;       // C01*C02 - C13*C23
    double Gamma = 0.0;       // C23*(C012 - C02) - C13*(C012 - C01)
    double GammaPrime = 0.0;  // C02*(C123 - C23) - C01*(C123 - C13)
    double delta = 0.0;       // max(C123 - C13 - C23, 0)
    double zeta1 = 0.0;       // C(g01/(g01+1))
    double zeta2 = 0.0;       // C(g02/(g02+1))
};

enum class Sign { negative, zero, positive };

std::string to_string(Sign s);

inline constexpr double default_sign_tolerance = 1e-9;

/// Largest possible coherent-combining excess, 0.5*log2(4/3).
double max_coherent_excess();

/// C(P) = 0.5*log2(1 + P). Throws std::domain_error for negative or non-finite input.
double capacity_of(double gain);

LinkCapacities derive(const ChannelGains& gains);

/// ZERO iff |Delta| <= tol*max(1, C01*C02, C13*C23).
Sign classify_delta(const LinkCapacities& caps, double tol = default_sign_tolerance);

/// ZERO iff |Gamma| <= tol times the larger magnitude of its two terms.
Sign classify_gamma(const LinkCapacities& caps, double tol = default_sign_tolerance);
Sign classify_gamma_prime(const LinkCapacities& caps, double tol = default_sign_tolerance);

/// Relabels relay 1 as relay 2 and vice versa.
ChannelGains swap_relays(const ChannelGains& gains);
LinkCapacities swap_relays(const LinkCapacities& caps);

}  // namespace diamond
