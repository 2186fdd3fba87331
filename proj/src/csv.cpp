#include "dspl/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <system_error>

namespace dspl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(trim(line.substr(start)));
      return cells;
    }
    cells.emplace_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

[[noreturn]] void fail_cell(const std::string& what, std::size_t file_line,
                            const std::string& column) {
  throw ParseError(what + " at row " + std::to_string(file_line) +
                   ", column '" + column + "'");
}

double parse_cell(const std::string& cell, std::size_t file_line,
                  const std::string& column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || cell.empty()) {
    fail_cell("unparseable number '" + cell + "'", file_line, column);
  }
  if (!std::isfinite(value)) {
    fail_cell("non-finite value '" + cell + "'", file_line, column);
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("unparseable number '" + std::string(text) + "'");
  }
  return value;
}

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  std::size_t file_line = 0;
  while (std::getline(in, line)) {
    ++file_line;
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ParseError("row " + std::to_string(file_line) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) throw ParseError("'" + path + "' has no header");
  return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  const auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

std::vector<Batch> load_csv_dataset(const std::string& path, int batch_size) {
  const CsvTable table = read_csv(path);
  const int y_col = table.column("y");
  if (y_col < 0) {
    throw ParseError("'" + path + "' is missing the response column 'y'");
  }
  const int batch_col = table.column("batch");
  if (batch_size <= 0 && batch_col < 0) {
    throw ParseError("'" + path +
                     "' has no 'batch' column; pass a batch size instead");
  }
  std::vector<int> feature_cols;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    const int idx = static_cast<int>(i);
    if (idx != y_col && idx != batch_col) feature_cols.push_back(idx);
  }
  if (feature_cols.empty()) {
    throw ParseError("'" + path + "' has no feature columns");
  }
  if (table.rows.empty()) {
    throw ParseError("'" + path + "' has no data rows");
  }

  const auto p = static_cast<Eigen::Index>(feature_cols.size());
  // Group assignment per row: either file-order chunks or the batch
  // column, batches ordered by first appearance.
  std::vector<int> group(table.rows.size());
  int num_groups = 0;
  if (batch_size > 0) {
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      group[r] = static_cast<int>(r) / batch_size;
    }
    num_groups = group.back() + 1;
  } else {
    std::map<long long, int> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const std::size_t file_line = r + 2;
      const std::string& cell = table.rows[r][batch_col];
      const double raw = parse_cell(cell, file_line, "batch");
      const auto id = static_cast<long long>(raw);
      if (static_cast<double>(id) != raw) {
        fail_cell("batch id '" + cell + "' is not an integer", file_line,
                  "batch");
      }
      auto [it, inserted] = seen.emplace(id, num_groups);
      if (inserted) ++num_groups;
      group[r] = it->second;
    }
  }

  std::vector<int> counts(num_groups, 0);
  for (int g : group) ++counts[g];
  std::vector<Batch> batches(num_groups);
  for (int g = 0; g < num_groups; ++g) {
    batches[g].X.resize(p, counts[g]);
    batches[g].y.resize(counts[g]);
    batches[g].id = g;
  }
  std::vector<int> filled(num_groups, 0);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t file_line = r + 2;
    Batch& b = batches[group[r]];
    const int j = filled[group[r]]++;
    b.y[j] = parse_cell(table.rows[r][y_col], file_line, "y");
    for (Eigen::Index f = 0; f < p; ++f) {
      b.X(f, j) = parse_cell(table.rows[r][feature_cols[f]], file_line,
                             table.header[feature_cols[f]]);
    }
  }
  return batches;
}

void save_dataset_csv(const std::vector<Batch>& batches,
                      const std::string& path) {
  validate_batches(batches);
  const auto p = batches.front().X.rows();
  std::vector<std::string> header{"batch", "y"};
  for (Eigen::Index f = 0; f < p; ++f) {
    header.push_back("x" + std::to_string(f));
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const Batch& b = batches[i];
    for (Eigen::Index j = 0; j < b.y.size(); ++j) {
      std::vector<std::string> row;
      row.reserve(header.size());
      row.push_back(std::to_string(i));
      row.push_back(format_double(b.y[j]));
      for (Eigen::Index f = 0; f < p; ++f) {
        row.push_back(format_double(b.X(f, j)));
      }
      rows.push_back(std::move(row));
    }
  }
  write_csv(path, header, rows);
}

}  // namespace dspl
