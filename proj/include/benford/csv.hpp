#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace benford {

/// Accounting of one CSV ingestion pass. rows_used + both dropped counts
/// always equals rows_read; blank lines are not rows.
struct IngestionSummary {
  std::size_t rows_read = 0;
  std::size_t rows_used = 0;
  std::size_t rows_dropped_nonpositive = 0;
  std::size_t rows_dropped_unparseable = 0;
  std::string column;
};

struct IngestResult {
  std::vector<double> values;
  IngestionSummary summary;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s.remove_prefix(1);
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      cells.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return cells;
}

/// Strict numeric parse: '.' decimal separator, scientific notation allowed,
/// whole cell must be consumed.
inline bool parse_double(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

}  // namespace detail

/// Reads one numeric column from CSV text. `column_spec` is either a header
/// name or a 1-based index. A header row is assumed when the first row's
/// selected cell is non-numeric. Values must land in [1e-300, 1e300] to be
/// usable; everything else is dropped and counted, never imputed.
inline IngestResult ingest_csv(std::istream& in, const std::string& column_spec = "1") {
  IngestResult res;
  res.summary.column = column_spec;

  std::size_t col_index = 0;
  bool index_known = false;
  {
    double tmp;
    if (detail::parse_double(column_spec, tmp) && tmp >= 1.0 &&
        tmp == static_cast<double>(static_cast<std::size_t>(tmp))) {
      col_index = static_cast<std::size_t>(tmp) - 1;
      index_known = true;
    }
  }

  std::string line;
  bool first_row = true;
  auto classify = [&](std::string_view cell) {
    double v;
    if (!detail::parse_double(cell, v) || !(v == v) /*nan*/ || v > 1e300 ||
        v < -1e300) {
      ++res.summary.rows_dropped_unparseable;
      return;
    }
    if (v <= 0.0) {
      ++res.summary.rows_dropped_nonpositive;
      return;
    }
    if (v < 1e-300 || v > 1e300) {
      ++res.summary.rows_dropped_unparseable;
      return;
    }
    ++res.summary.rows_used;
    res.values.push_back(v);
  };

  while (std::getline(in, line)) {
    std::string_view sv = line;
    if (detail::trim(sv).empty()) continue;
    auto cells = detail::split_row(sv);

    if (first_row) {
      first_row = false;
      if (!index_known) {
        // column addressed by name: the first row must be a header
        bool found = false;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (cells[i] == column_spec) {
            col_index = i;
            found = true;
            break;
          }
        }
        if (!found)
          throw std::invalid_argument("ingest_csv: column '" + column_spec +
                                      "' not found in header");
        continue;  // header row is not data
      }
      double v;
      if (col_index < cells.size() && !detail::parse_double(cells[col_index], v))
        continue;  // non-numeric first row: treat as header
    }

    ++res.summary.rows_read;
    if (col_index >= cells.size()) {
      ++res.summary.rows_dropped_unparseable;
      continue;
    }
    classify(cells[col_index]);
  }
  return res;
}

}  // namespace benford
