#pragma once

#include <string>

#include <json.hpp>

#include "diamond/analysis.hpp"

namespace diamond {

/// Decimal text with 17 significant digits; parses back to the same double.
std::string format_real(double x);

std::string csv_header();
std::string csv_row(const RateReport& report);

/// Structured form of a report. Field names follow the RateReport members.
nlohmann::json to_json(const RateReport& report);
RateReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepSummary& summary);

}  // namespace diamond
