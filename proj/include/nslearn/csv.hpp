#ifndef NSLEARN_CSV_HPP
#define NSLEARN_CSV_HPP

#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <Eigen/Core>

#include "nslearn/errors.hpp"
#include "nslearn/panel.hpp"

namespace nslearn {

/// CSV ingestion request. Cells are comma separated with '.' as the decimal
/// point and no thousands separators. `time_column` names a column to drop
/// (requires a header row). `lags` is carried along for the lagged designs
/// built downstream; ingestion itself never drops rows.
struct IngestSpec {
  std::string path;
  Orientation orientation = Orientation::SeriesAsRows;
  bool has_header = false;
  std::optional<std::string> time_column;
  Eigen::Index lags = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

}  // namespace detail

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double value) {
  char buffer[40];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

/// Reads a rectangular numeric CSV into a panel with the requested
/// orientation tag. Non-numeric or empty cells are reported with their
/// 1-based file coordinates; NaN/inf cells are rejected by the Panel
/// constructor with matrix coordinates.
inline Panel ingest_csv(const IngestSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw MissingFile("cannot open file: " + spec.path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw EmptyInput("empty CSV file: " + spec.path);

  std::size_t first_data_row = 0;
  std::optional<std::size_t> drop_col;
  if (spec.has_header) {
    const auto header = detail::split_cells(lines[0]);
    first_data_row = 1;
    if (spec.time_column) {
      for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == *spec.time_column) {
          drop_col = c;
          break;
        }
      }
      if (!drop_col) {
        throw Error("time column '" + *spec.time_column + "' not found in header");
      }
    }
  } else if (spec.time_column) {
    throw Error("time column requires a header row");
  }
  if (first_data_row >= lines.size()) {
    throw EmptyInput("CSV has a header but no data rows: " + spec.path);
  }

  const std::size_t data_rows = lines.size() - first_data_row;
  std::size_t width = 0;
  std::vector<std::vector<double>> parsed(data_rows);
  for (std::size_t r = 0; r < data_rows; ++r) {
    const std::size_t file_row = first_data_row + r + 1;  // 1-based
    const auto cells = detail::split_cells(lines[first_data_row + r]);
    if (r == 0) {
      width = cells.size();
    } else if (cells.size() != width) {
      std::ostringstream what;
      what << "row " << file_row << " has " << cells.size()
           << " cells, expected " << width;
      throw RaggedRows(what.str());
    }
    parsed[r].reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (drop_col && c == *drop_col) continue;
      const std::string_view cell = cells[c];
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
        std::ostringstream what;
        what << "cell at row " << file_row << ", column " << c + 1
             << " is not numeric: '" << cell << "'";
        throw NonNumericCell(what.str(), file_row, c + 1);
      }
      parsed[r].push_back(value);
    }
  }

  const std::size_t cols = width - (drop_col ? 1 : 0);
  if (cols == 0) throw EmptyInput("CSV has no data columns: " + spec.path);
  Eigen::MatrixXd values(static_cast<Eigen::Index>(data_rows),
                         static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < data_rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parsed[r][c];
    }
  }
  return Panel(std::move(values), spec.orientation);
}

/// Writes the matrix to a stream as CSV using shortest round-trip numbers,
/// so ingest(emit(panel)) reproduces the values bit for bit.
inline void emit_csv(const Eigen::MatrixXd& values, std::ostream& out,
                     const std::vector<std::string>* header = nullptr) {
  if (header != nullptr) {
    for (std::size_t c = 0; c < header->size(); ++c) {
      if (c > 0) out << ',';
      out << (*header)[c];
    }
    out << '\n';
  }
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(values(r, c));
    }
    out << '\n';
  }
}

inline void emit_csv(const Panel& panel, std::ostream& out,
                     const std::vector<std::string>* header = nullptr) {
  emit_csv(panel.values(), out, header);
}

inline void emit_csv_file(const Eigen::MatrixXd& values, const std::string& path,
                          const std::vector<std::string>* header = nullptr) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  emit_csv(values, out, header);
}

}  // namespace nslearn

#endif  // NSLEARN_CSV_HPP
