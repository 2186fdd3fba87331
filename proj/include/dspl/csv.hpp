#ifndef DSPL_CSV_HPP
#define DSPL_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

#include "dspl/types.hpp"

namespace dspl {

// Malformed file contents (bad number, ragged row, missing column);
// messages carry the row and column location.
struct ParseError : Error {
  using Error::Error;
};

// Round-trip-exact decimal rendering (17 significant digits).
std::string format_double(double x);

// Strict full-string parse; throws ParseError on garbage.
double parse_double(std::string_view text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column, or -1.
  int column(std::string_view name) const;
};

// Reads a comma-separated file with a header row. Cells are trimmed;
// rows must all have the header's width.
CsvTable read_csv(const std::string& path);

// Writes rows verbatim, comma-joined.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Dataset file layout: one instance per row, a "y" response column,
// an optional integer "batch" column, and every remaining column a
// feature (in header order).
//
// batch_size > 0 chunks rows into fixed-size batches in file order
// (the last may be short); batch_size <= 0 groups rows by the "batch"
// column, batches ordered by first appearance. All values must be
// finite.
std::vector<Batch> load_csv_dataset(const std::string& path, int batch_size);

// Writes batches in the same layout ("batch,y,x0,...") with
// round-trip-exact numbers, so load_csv_dataset reproduces the
// matrices bit for bit.
void save_dataset_csv(const std::vector<Batch>& batches,
                      const std::string& path);

}  // namespace dspl

#endif  // DSPL_CSV_HPP
