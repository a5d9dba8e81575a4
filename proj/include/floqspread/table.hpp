#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace floqspread {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::ptrdiff_t find_column(const std::string& name) const;  // -1 if absent
};

// 12 significant digits, locale-independent
std::string format_double(double v);

// RFC-4180: header row, quoting only where needed
void write_csv(const Table& table, std::ostream& os);

// one flat JSON object per row
void write_jsonl(const Table& table, std::ostream& os);

// Writes the table to path in "csv" or "jsonl" format. Refuses to overwrite
// an existing file unless force is set.
void emit(const Table& table, const std::string& format,
          const std::filesystem::path& path, bool force);

}  // namespace floqspread
