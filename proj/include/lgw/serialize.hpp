#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lgw/gauss_survey.hpp"

namespace lgw {

using Json = nlohmann::ordered_json;

/// Column order shared by the JSON records and the CSV header.
const std::vector<std::string>& record_columns();

Json to_json(const TableRecord& rec);
std::string csv_header();
std::string to_csv(const TableRecord& rec);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

std::string to_string(CaseTag tag);
std::string to_string(Pairing pairing);

Json to_json(const FixedPointReport& report);
Json to_json(const AlphaStatistics& stats);

/// Summary object; `records` are the flattened rows to embed.
Json to_json(const SurveySummary& summary, const std::vector<TableRecord>& records);

}  // namespace lgw
