#pragma once

// Human (4 dp) and JSON renderings of metric reports.

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "p4/io.hpp"
#include "p4/metrics.hpp"

namespace p4eval::render {

enum class OutputFormat { Table, Csv, Json };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw Error(Errc::InvalidArgument, "unknown format '" + std::string(s) + "'");
}

/// Display labels, parallel to kMetricColumns.
inline constexpr std::array<std::string_view, kMetricColumns.size()> kDisplayNames{
    "PREC", "REC", "SPEC", "NPV", "F1", "P4", "MCC", "MCC'", "J", "J'", "MK", "MK'"};

inline void write_report_block(std::ostream& out, std::string_view title, const ConfusionMatrix& m,
                               const MetricReport& r) {
  if (!title.empty()) out << title << '\n';
  out << "TP " << m.tp() << "  FP " << m.fp() << "  FN " << m.fn() << "  TN " << m.tn()
      << "  (population " << m.population() << ")\n";
  for (std::size_t i = 0; i < kMetricColumns.size(); ++i) {
    out << kDisplayNames[i] << ' ' << io::format_fixed4(r.*kMetricColumns[i].field) << '\n';
  }
}

/// Column-aligned table, one row per key.
inline void write_text_table(std::ostream& out, std::string_view key_name,
                             const std::vector<io::TableRow>& rows) {
  constexpr int kWidth = 9;
  out << std::left << std::setw(12) << key_name << std::right;
  for (std::string_view c : {"TP", "FP", "FN", "TN"}) out << ' ' << std::setw(kWidth) << c;
  for (auto name : kDisplayNames) out << ' ' << std::setw(kWidth) << name;
  out << '\n';
  for (const auto& row : rows) {
    out << std::left << std::setw(12) << row.key << std::right;
    for (Count c : {row.matrix.tp(), row.matrix.fp(), row.matrix.fn(), row.matrix.tn()}) {
      out << ' ' << std::setw(kWidth) << c;
    }
    for (const auto& col : kMetricColumns) {
      out << ' ' << std::setw(kWidth) << io::format_fixed4(row.report.*col.field);
    }
    out << '\n';
  }
}

/// Undefined metrics become JSON null (JSON has no NaN literal).
inline nlohmann::ordered_json to_json(std::string_view key_name, std::string_view key,
                                      const ConfusionMatrix& m, const MetricReport& r) {
  nlohmann::ordered_json j;
  if (!key_name.empty()) j[std::string(key_name)] = std::string(key);
  j["tp"] = m.tp();
  j["fp"] = m.fp();
  j["fn"] = m.fn();
  j["tn"] = m.tn();
  for (const auto& col : kMetricColumns) {
    const MetricValue& v = r.*col.field;
    if (v) {
      j[std::string(col.name)] = v.value();
    } else {
      j[std::string(col.name)] = nullptr;
    }
  }
  return j;
}

inline nlohmann::ordered_json to_json(std::string_view key_name,
                                      const std::vector<io::TableRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) arr.push_back(to_json(key_name, row.key, row.matrix, row.report));
  return arr;
}

/// Renders a set of rows in the requested format. `blocks` selects the
/// vertical per-report layout for table mode instead of a wide table.
inline void write_rows(std::ostream& out, OutputFormat format, std::string_view key_name,
                       const std::vector<io::TableRow>& rows, bool blocks = false) {
  switch (format) {
    case OutputFormat::Csv:
      io::write_table_csv(out, key_name, rows);
      break;
    case OutputFormat::Json:
      out << to_json(key_name, rows).dump(2) << '\n';
      break;
    case OutputFormat::Table:
      if (!blocks) {
        write_text_table(out, key_name, rows);
        break;
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) out << '\n';
        write_report_block(out, rows[i].key, rows[i].matrix, rows[i].report);
      }
      break;
  }
}

}  // namespace p4eval::render
