#pragma once

// Text formats: the scored-sample input CSV, the metric table CSV used for
// curves, series and cases, and number formatting shared by all renderers.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "p4/confusion.hpp"
#include "p4/error.hpp"
#include "p4/metrics.hpp"

namespace p4eval::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

inline Error parse_error(std::string_view source, std::size_t line, const std::string& what) {
  return Error(Errc::Parse, std::string(source) + ":" + std::to_string(line) + ": " + what);
}

}  // namespace detail

/// Locale-independent decimal parse; the whole field must be consumed.
/// Accepts "nan" (any case) so Undefined table cells read back.
inline bool parse_double(std::string_view text, double& out) {
  text = detail::trim(text);
  if (text.empty()) return false;
  if (detail::lower(text) == "nan") {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

inline bool parse_count(std::string_view text, Count& out) {
  text = detail::trim(text);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return !text.empty() && ec == std::errc() && ptr == end;
}

/// Shortest decimal that round-trips to the same double; NaN prints "nan".
inline std::string format_shortest(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::string format_shortest(const MetricValue& v) { return format_shortest(v.value_or_nan()); }

/// Four decimals for human tables; Undefined prints "n/a".
inline std::string format_fixed4(const MetricValue& v) {
  if (!v) return "n/a";
  std::array<char, 32> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.4f", v.value());
  std::string s(buf.data(), static_cast<std::size_t>(n));
  if (s == "-0.0000") s = "0.0000";
  return s;
}

// ---------------------------------------------------------------------------
// Scored-sample CSV: header "score,label"; label 1/0/positive/negative.

inline std::vector<ScoredSample> read_samples(std::istream& in, std::string_view source = "<input>") {
  std::vector<ScoredSample> samples;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = detail::trim(line);
    if (view.empty()) continue;
    const auto fields = detail::split(view);
    if (!header_seen) {
      if (fields.size() != 2 || detail::lower(fields[0]) != "score" ||
          detail::lower(fields[1]) != "label") {
        throw detail::parse_error(source, line_no, "expected header 'score,label'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      throw detail::parse_error(source, line_no, "expected 2 fields, got " + std::to_string(fields.size()));
    }
    ScoredSample s;
    if (!parse_double(fields[0], s.score) || std::isnan(s.score)) {
      throw detail::parse_error(source, line_no, "bad score '" + std::string(fields[0]) + "'");
    }
    if (!(s.score >= 0.0 && s.score <= 1.0)) {
      throw detail::parse_error(source, line_no,
                                "score " + std::string(fields[0]) + " outside [0,1]");
    }
    const std::string label = detail::lower(fields[1]);
    if (label == "1" || label == "positive") {
      s.label = Label::Positive;
    } else if (label == "0" || label == "negative") {
      s.label = Label::Negative;
    } else {
      throw detail::parse_error(source, line_no, "unknown label '" + std::string(fields[1]) + "'");
    }
    samples.push_back(s);
  }
  if (samples.empty()) throw Error(Errc::EmptyInput, std::string(source) + ": no samples");
  return samples;
}

inline std::vector<ScoredSample> load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
  return read_samples(in, path);
}

// ---------------------------------------------------------------------------
// Metric table CSV:
//   <key>,tp,fp,fn,tn,prec,rec,spec,npv,f1,p4,mcc,mcc_scaled,j,j_scaled,mk,mk_scaled
// <key> is "tau" for curves, the varying parameter for series, "case" for the
// edge cases. Values use shortest round-trip decimals, Undefined is "nan".

struct TableRow {
  std::string key;
  ConfusionMatrix matrix;
  MetricReport report;
};

struct TableRowValues {
  std::string key;
  ConfusionMatrix matrix;
  std::array<double, kMetricColumns.size()> values{};
};

struct MetricTable {
  std::string key_name;
  std::vector<TableRowValues> rows;
};

inline void write_table_header(std::ostream& out, std::string_view key_name) {
  out << key_name << ",tp,fp,fn,tn";
  for (const auto& col : kMetricColumns) out << ',' << col.name;
  out << '\n';
}

inline void write_table_row(std::ostream& out, std::string_view key, const ConfusionMatrix& m,
                            const MetricReport& r) {
  out << key << ',' << m.tp() << ',' << m.fp() << ',' << m.fn() << ',' << m.tn();
  for (const auto& col : kMetricColumns) out << ',' << format_shortest(r.*col.field);
  out << '\n';
}

inline void write_table_csv(std::ostream& out, std::string_view key_name,
                            const std::vector<TableRow>& rows) {
  write_table_header(out, key_name);
  for (const auto& row : rows) write_table_row(out, row.key, row.matrix, row.report);
}

inline MetricTable read_table_csv(std::istream& in, std::string_view source = "<table>") {
  MetricTable table;
  std::string line;
  std::size_t line_no = 0;
  constexpr std::size_t kFields = 5 + kMetricColumns.size();
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = detail::trim(line);
    if (view.empty()) continue;
    const auto fields = detail::split(view);
    if (fields.size() != kFields) {
      throw detail::parse_error(source, line_no,
                                "expected " + std::to_string(kFields) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    if (!header_seen) {
      static constexpr std::array<std::string_view, 4> kCounts{"tp", "fp", "fn", "tn"};
      for (std::size_t i = 0; i < kCounts.size(); ++i) {
        if (fields[i + 1] != kCounts[i]) throw detail::parse_error(source, line_no, "bad header");
      }
      for (std::size_t i = 0; i < kMetricColumns.size(); ++i) {
        if (fields[i + 5] != kMetricColumns[i].name) {
          throw detail::parse_error(source, line_no, "bad header column '" + std::string(fields[i + 5]) + "'");
        }
      }
      table.key_name = std::string(fields[0]);
      header_seen = true;
      continue;
    }
    std::array<Count, 4> counts{};
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (!parse_count(fields[i + 1], counts[i])) {
        throw detail::parse_error(source, line_no, "bad count '" + std::string(fields[i + 1]) + "'");
      }
    }
    TableRowValues row{std::string(fields[0]),
                       ConfusionMatrix::from_counts(counts[0], counts[1], counts[2], counts[3]),
                       {}};
    for (std::size_t i = 0; i < kMetricColumns.size(); ++i) {
      if (!parse_double(fields[i + 5], row.values[i])) {
        throw detail::parse_error(source, line_no, "bad value '" + std::string(fields[i + 5]) + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw Error(Errc::EmptyInput, std::string(source) + ": empty table");
  return table;
}

/// Recomputes every report from the stored counts, keeping keys.
inline std::vector<TableRow> reevaluate(const MetricTable& table) {
  std::vector<TableRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& row : table.rows) rows.push_back({row.key, row.matrix, evaluate_all(row.matrix)});
  return rows;
}

}  // namespace p4eval::io
