#pragma once

#include <array>
#include <functional>
#include <vector>

#include "diamond/channel.hpp"
#include "diamond/schemes.hpp"

namespace diamond {

/// Gains scale as g_ij = P^a_ij.
struct GdofExponents {
    double a01 = 0.0;
    double a02 = 0.0;
    double a13 = 0.0;
    double a23 = 0.0;

    /// Throws std::domain_error unless every exponent is finite and >= 0.
    void validate() const;

    /// a01*a02 - a13*a23, the leading coefficient of Delta.
    double delta_alpha() const;

    /// True when the (log P)^2 coefficient of Gamma (delta_alpha <= 0) or Gamma'
    /// (delta_alpha > 0) vanishes, so lower-order terms decide the sign.
    bool degenerate() const;
};

struct GdofTable {
    std::array<double, 4> up{};
    std::array<double, 4> mdf{};
    std::array<double, 2> bc{};
    std::array<double, 2> mac{};
    double delta_alpha = 0.0;

    /// Set when degenerate() holds. The achievable entry is then the MDF value.
    bool mdf_optimal = false;

    int upper_index = 1;   // 1..4
    double upper = 0.0;
    SchemeId scheme = SchemeId::mdf;
    int scheme_branch = 1;  // 1 or 2 within bc or mac; 1..4 for mdf
    double achievable = 0.0;
    int mdf_branch = 1;    // 1..4
    double mdf_value = 0.0;
};

GdofTable gdof_closed_forms(const GdofExponents& alphas);

struct GdofSample {
    double P = 0.0;
    double achievable_ratio = 0.0;  // rate / (0.5*log2 P)
    double upper_ratio = 0.0;
    double mdf_ratio = 0.0;
};

/// Runs the full analysis with g_ij = P^a_ij at each P. The grid must be increasing with
/// every P >= 100 (std::invalid_argument otherwise). Throws std::domain_error when a gain
/// overflows.
std::vector<GdofSample> gdof_numeric(const GdofExponents& alphas, const std::vector<double>& P_grid);

/// MDF rate over 0.5*log2(SNR) at the last grid point. The grid must be increasing and > 1.
double multiplexing_gain(const std::function<ChannelGains(double)>& gains_at_snr,
                         const std::vector<double>& snr_grid);

}  // namespace diamond
