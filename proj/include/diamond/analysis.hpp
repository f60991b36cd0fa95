#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diamond/bounds.hpp"
#include "diamond/channel.hpp"
#include "diamond/schemes.hpp"

namespace diamond {

inline constexpr int region_count = 14;

/// One row of the gap table. Rows 1-6 have Delta <= 0 (gamma_sign is the sign of Gamma),
/// rows 7-14 have Delta > 0 (gamma_sign is the sign of Gamma').
///
///  1  Delta<=0, Gamma<=0, C02<=C01                      MDF, branch 1
///  2  Delta<=0, Gamma<=0, C02>C01, C01<=1               MDF, branch 2
///  3  Delta<=0, Gamma<=0, C02>C01, C01>1                MDF-BC with eta1
///  4  Delta<=0, Gamma>0,  C01<=C02                      MDF, branch 2
///  5  Delta<=0, Gamma>0,  C01>C02, C02<=1               MDF, branch 1
///  6  Delta<=0, Gamma>0,  C01>C02, C02>1                MDF-BC with eta2
///  7  Delta>0,  Gamma'<=0, C23<=C13                     MDF-MAC (MDF branch 3 as alternative)
///  8  Delta>0,  Gamma'<=0, C23>C13, C13<=1, delta=0     MDF-MAC (MDF branch 4 as alternative)
///  9  Delta>0,  Gamma'<=0, C23>C13, C13<=1, delta>0     MDF-MAC
/// 10  Delta>0,  Gamma'<=0, C23>C13, C13>1               MDF-MAC
/// 11-14 mirror 7-10 with Gamma'>0 and the relays swapped.
struct RegionId {
    int index = 1;
    Sign delta_sign = Sign::zero;
    Sign gamma_sign = Sign::zero;
    std::string subcondition;

    std::string label() const;
    bool operator==(const RegionId& o) const { return index == o.index; }
};

enum class GapSymbol { k1, k2, k3, k4, k5, k6, k7, k8, bc1, bc2, mac1, mac2 };

std::string to_string(GapSymbol s);

/// The printed gap closed forms. k7 and k8 carry no delta term as printed.
double gap_value(const LinkCapacities& caps, GapSymbol symbol);

struct RateReport {
    ChannelGains gains;
    LinkCapacities caps;
    RegionId region;
    SchemeResult achievable;
    SchemeResult mdf;
    std::optional<SchemeResult> mdf_bc;
    std::optional<SchemeResult> mdf_mac;
    UpperBound upper;
    CertificateReport certificate;
    double lp_optimum = 0.0;
    GapSymbol gap_symbol = GapSymbol::k1;
    double gap_formula_value = 0.0;
    double gap_guarantee = 0.0;
    double measured_gap = 0.0;
};

RegionId classify_region(const LinkCapacities& caps);

/// Recommended scheme of a region.
SchemeId recommended_scheme(int region_index);

/// Gap symbol and guarantee of the recommended scheme in a region.
GapSymbol recommended_gap_symbol(int region_index);
double gap_guarantee(const LinkCapacities& caps, int region_index);

/// Evaluates the gap closed form assigned to region. Throws std::invalid_argument when
/// region is not the region of caps.
double gap_formula(const LinkCapacities& caps, const RegionId& region);

RateReport analyze(const ChannelGains& gains);

/// Same, on capacities supplied by the caller instead of derive(gains).
RateReport analyze(const ChannelGains& gains, const LinkCapacities& caps);

/// Invariant violations of a report, empty when it is consistent.
std::vector<std::string> check_report(const RateReport& report);

struct SweepSpec {
    double gain_min = 1e-2;
    double gain_max = 1e4;
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

/// Gains of sample `index`, drawn log-uniform from a generator seeded by (seed, index) only.
ChannelGains sample_gains(const SweepSpec& spec, std::size_t index);

struct SweepSummary {
    std::size_t count = 0;
    double max_gap = 0.0;
    double max_delta = 0.0;
    std::size_t violations = 0;
    std::vector<std::string> violation_messages;  // first few only
    std::array<std::size_t, region_count> occupancy{};
    std::array<double, region_count> max_gap_by_region{};
    /// Largest measured gap minus guarantee per region (<= 0 when every guarantee holds).
    std::array<double, region_count> max_excess_by_region{};
};

/// Analyzes `count` sampled channels. Reports reach `sink` in index order, so output is
/// identical for any worker count.
SweepSummary sweep(const SweepSpec& spec, const std::function<void(std::size_t, const RateReport&)>& sink = {});

struct MdfGapStudy {
    int region_index = 1;
    double mdf_rate = 0.0;
    double mdf_gap = 0.0;            // region upper bound minus MDF rate
    GapSymbol mdf_symbol = GapSymbol::k1;
    double mdf_gap_formula = 0.0;
    double mdf_guarantee = 0.0;      // infinity where the table gives MDF no guarantee
    SchemeId enhanced_scheme = SchemeId::mdf;
    double enhanced_rate = 0.0;
    double enhanced_gap = 0.0;
    double enhanced_guarantee = 0.0;
    bool symmetric = false;            // C01 = C02 and C13 = C23
    bool partially_symmetric = false;  // C01 = C02 with Delta < 0, or C13 = C23 with Delta > 0
    std::string note;
};

MdfGapStudy mdf_gap_study(const LinkCapacities& caps, const ChannelGains& gains);

/// Lower bound on the MDF gap for C02 = x, C13 = C23 = alpha*x, C01 = beta*x with
/// alpha > beta > 1: (alpha^2 - beta)(beta - 1) / ((alpha + beta)^2 (alpha + 1)) * x.
double mdf_gap_growth_bound(double alpha, double beta, double x);

/// Gains realizing the capacities of that family.
ChannelGains mdf_gap_family(double alpha, double beta, double x);

/// Gain whose capacity is c bits: 2^(2c) - 1.
double gain_for_capacity(double c);

}  // namespace diamond
