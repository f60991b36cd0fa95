#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace diamond {

struct VerifyOptions {
    std::size_t count = 10000;
    std::uint64_t seed = 1;
    double gain_min = 1e-2;
    double gain_max = 1e4;

    bool avg_power = false;
    std::size_t avg_power_count = 200;
    int schedule_resolution = 16;
    int power_resolution = 16;

    /// Test hook: negates Delta before regions and bounds are evaluated. A sound suite
    /// must then report violations.
    bool flip_delta_sign = false;
};

/// One checked statement. margin is limit minus observed value, so a negative worst margin
/// beyond the check's tolerance is a violation.
struct PropertyRow {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_margin = 0.0;
    std::string first_failure;
};

struct VerifyResult {
    std::vector<PropertyRow> rows;
    double max_delta = 0.0;

    std::size_t violations() const;
    bool passed() const { return violations() == 0; }
};

VerifyResult run_properties(const VerifyOptions& options);

}  // namespace diamond
