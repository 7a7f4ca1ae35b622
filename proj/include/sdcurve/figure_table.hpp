// Typed CSV tables backing the figure data.
//
// Each column has a storage kind; cells are written in the shortest decimal
// form that parses back to the identical value in that kind, so a table
// read back with the same schema compares identical to the one written.
// Files are comma-separated, lowercase header, '\n'-terminated rows, no BOM.

#ifndef SDCURVE_FIGURE_TABLE_HPP_
#define SDCURVE_FIGURE_TABLE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sdcurve/bigfloat.hpp"

namespace sdcurve {

enum class CellKind { integer, binary32, binary64, extended };

struct Column {
  std::string name;
  CellKind kind = CellKind::binary64;
  int bits = 53;  // only meaningful for extended
};

using Cell = std::variant<std::int64_t, float, double, BigFloat>;

// Same alternative and bit-identical value.
bool identical(const Cell& a, const Cell& b);
std::string format_cell(const Cell& cell);

struct FigureTable {
  std::string name;  // e.g. "fig-1-a"; the file is <name>.csv
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  std::string header() const;
  std::string file_name() const { return name + ".csv"; }
  std::string to_csv() const;

  // Appends a row after checking arity and cell kinds.
  void add_row(std::vector<Cell> row);

  // Writes <dir>/<name>.csv. Throws std::runtime_error naming the file.
  std::filesystem::path write(const std::filesystem::path& dir) const;

  // Parses CSV text against a schema; the header must match byte for byte.
  static FigureTable parse(std::string name, std::vector<Column> columns, std::string_view text);
  static FigureTable read(std::string name, std::vector<Column> columns, const std::filesystem::path& file);
};

bool identical(const FigureTable& a, const FigureTable& b);

}  // namespace sdcurve

#endif  // SDCURVE_FIGURE_TABLE_HPP_
