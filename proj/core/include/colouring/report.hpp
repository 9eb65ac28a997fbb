#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "colouring/q7.hpp"

namespace colouring {

inline constexpr int kReportDecimalPlaces = 5;

/// {"a": "...", "b": "...", "decimal": "..."}; a and b are exact fractions,
/// the decimal is a rendering only and is ignored on parse.
nlohmann::ordered_json q7_to_json(const Q7& x);
Q7 q7_from_json(const nlohmann::ordered_json& j);

/// One verification or simulation check: named exact values plus free-form
/// notes, a paper anchor for audit, and a verdict.
struct CheckRecord {
  std::string name;
  std::string anchor;
  bool pass = false;
  std::vector<std::pair<std::string, Q7>> values;
  std::vector<std::pair<std::string, std::string>> notes;
  double runtime_seconds = -1.0;  // negative: not recorded, omitted on write

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct ReportDocument {
  std::string tool;
  std::string version;
  std::vector<std::pair<std::string, std::string>> config;  // echoed, in order
  std::vector<CheckRecord> checks;

  bool all_pass() const;
  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

enum class ReportFormat { Json, Csv };

nlohmann::ordered_json document_to_json(const ReportDocument& doc);
ReportDocument document_from_json(const nlohmann::ordered_json& j);

/// Stable bytes: same document, same output. JSON is pretty-printed with a
/// fixed key order; CSV is one row per value, note, or config entry.
std::string write_report(const ReportDocument& doc, ReportFormat format);
ReportDocument parse_report(const std::string& text, ReportFormat format);

}  // namespace colouring
