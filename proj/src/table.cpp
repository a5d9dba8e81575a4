#include "floqspread/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace floqspread {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("Table: row width does not match column count");
  rows.push_back(std::move(row));
}

std::ptrdiff_t Table::find_column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_to_string(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << csv_escape(table.columns[i]);
  os << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_escape(cell_to_string(row[i]));
    os << "\r\n";
  }
}

void write_jsonl(const Table& table, std::ostream& os) {
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const auto* v = std::get_if<std::int64_t>(&row[i]))
        obj[table.columns[i]] = *v;
      else if (const auto* d = std::get_if<double>(&row[i]))
        obj[table.columns[i]] = *d;
      else
        obj[table.columns[i]] = std::get<std::string>(row[i]);
    }
    os << obj.dump() << "\n";
  }
}

void emit(const Table& table, const std::string& format,
          const std::filesystem::path& path, bool force) {
  if (format != "csv" && format != "jsonl")
    throw std::invalid_argument("emit: format must be csv or jsonl, got '" + format + "'");
  if (!force && std::filesystem::exists(path))
    throw IoError("emit: refusing to overwrite existing file " + path.string() +
                  " (pass force)");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("emit: cannot open " + path.string() + " for writing");
  if (format == "csv")
    write_csv(table, os);
  else
    write_jsonl(table, os);
  os.flush();
  if (!os) throw IoError("emit: write to " + path.string() + " failed");
}

}  // namespace floqspread
