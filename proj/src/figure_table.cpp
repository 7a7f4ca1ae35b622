#include "sdcurve/figure_table.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sdcurve/decimal.hpp"

namespace sdcurve {
namespace {

bool matches_kind(const Cell& cell, const Column& column) {
  switch (column.kind) {
    case CellKind::integer:
      return std::holds_alternative<std::int64_t>(cell);
    case CellKind::binary32:
      return std::holds_alternative<float>(cell);
    case CellKind::binary64:
      return std::holds_alternative<double>(cell);
    case CellKind::extended:
      return std::holds_alternative<BigFloat>(cell) && std::get<BigFloat>(cell).precision() == column.bits;
  }
  return false;
}

Cell parse_cell(std::string_view text, const Column& column) {
  switch (column.kind) {
    case CellKind::integer:
      return parse_integer(text);
    case CellKind::binary32:
      return parse_binary32(text);
    case CellKind::binary64:
      return parse_binary64(text);
    case CellKind::extended:
      return BigFloat::parse(text, column.bits);
  }
  throw std::logic_error("unknown cell kind");
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

bool identical(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, float>) {
          return std::bit_cast<std::uint32_t>(x) == std::bit_cast<std::uint32_t>(y);
        } else if constexpr (std::is_same_v<T, double>) {
          return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
        } else if constexpr (std::is_same_v<T, BigFloat>) {
          return x.identical(y);
        } else {
          return x == y;
        }
      },
      a);
}

std::string format_cell(const Cell& cell) {
  return std::visit([](const auto& x) { return format_shortest(x); }, cell);
}

std::string FigureTable::header() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += columns[i].name;
  }
  return out;
}

std::string FigureTable::to_csv() const {
  std::string out = header();
  out.push_back('\n');
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out.push_back(',');
      out += format_cell(row[i]);
    }
    out.push_back('\n');
  }
  return out;
}

void FigureTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument(name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(columns.size()));
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!matches_kind(row[i], columns[i])) {
      throw std::invalid_argument(name + ": wrong cell type in column '" + columns[i].name + "'");
    }
  }
  rows.push_back(std::move(row));
}

std::filesystem::path FigureTable::write(const std::filesystem::path& dir) const {
  const std::filesystem::path file = dir / file_name();
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
  const std::string text = to_csv();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing " + file.string());
  return file;
}

FigureTable FigureTable::parse(std::string name, std::vector<Column> columns, std::string_view text) {
  FigureTable table{std::move(name), std::move(columns), {}};
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t newline = text.find('\n', start);
    if (newline == std::string_view::npos) {
      throw std::invalid_argument(table.name + ": unterminated final line");
    }
    const std::string_view line = text.substr(start, newline - start);
    start = newline + 1;
    if (line_no++ == 0) {
      if (line != table.header()) {
        throw std::invalid_argument(table.name + ": header '" + std::string(line) + "' != '" + table.header() + "'");
      }
      continue;
    }
    const auto fields = split_commas(line);
    if (fields.size() != table.columns.size()) {
      throw std::invalid_argument(table.name + ": line " + std::to_string(line_no) + " has " +
                                  std::to_string(fields.size()) + " fields");
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) row.push_back(parse_cell(fields[i], table.columns[i]));
    table.rows.push_back(std::move(row));
  }
  if (line_no == 0) throw std::invalid_argument(table.name + ": empty file");
  return table;
}

FigureTable FigureTable::read(std::string name, std::vector<Column> columns, const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(std::move(name), std::move(columns), buffer.str());
}

bool identical(const FigureTable& a, const FigureTable& b) {
  if (a.name != b.name || a.header() != b.header() || a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
      if (!identical(a.rows[r][c], b.rows[r][c])) return false;
    }
  }
  return true;
}

}  // namespace sdcurve
