#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pseudoadder/stats_engine.hpp"

namespace pseudoadder {

/// `{"n": int, "ec": [{"i": int, "j": int, "value": int}]}`. Only nonzero
/// entries are written; values that do not fit in 64 bits are written as
/// decimal strings.
nlohmann::json ec_table_to_json(const ChainErrorTable& ec);

/// Missing entries read as 0. Values may be integers or decimal strings.
ChainErrorTable ec_table_from_json(const nlohmann::json& j);

/// One scalar of a report. Chain-indexed fields carry the chain.
struct ReportField {
  std::string name;
  std::optional<CarryChain> chain;
  std::string value;
};

/// The flat list of values both renderings are built from. Big integers and
/// exact rationals ("num/den") are strings; floats use round-trip precision.
/// `ec` adds the per-chain table entries when given.
std::vector<ReportField> report_fields(const StatsReport& r, const ChainErrorTable* ec = nullptr);

/// Structured JSON with the same values as report_fields.
nlohmann::json stats_report_to_json(const StatsReport& r, const ChainErrorTable* ec = nullptr);

/// Long-format CSV, header `field,i,j,value`, one row per ReportField.
void write_stats_csv(std::ostream& out, const StatsReport& r, const ChainErrorTable* ec = nullptr);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// The error sign convention used throughout the outputs.
inline constexpr const char* kSignConvention = "error = s - s'";

}  // namespace pseudoadder
