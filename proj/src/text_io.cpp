#include "fmaxwell/text_io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "fmaxwell/errors.hpp"

namespace fmaxwell {

void validate(const OutputSpec& spec) {
  if (spec.precision < 6 || spec.precision > 17) throw DomainError("output precision must lie in [6, 17]");
}

std::string format_number(double value, int precision) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_csv(std::ostream& out, const CsvTable& table, int precision) {
  if (table.header.size() != table.columns.size()) throw DomainError("CSV header and column count differ");
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  for (const auto& col : table.columns) {
    if (col.size() != rows) throw DomainError("CSV columns differ in length");
  }
  for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << format_number(table.columns[c][r], precision);
    }
    out << '\n';
  }
}

CsvTable read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
  };

  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing CSV header");
  table.header = split(line);
  table.columns.assign(table.header.size(), {});
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != table.header.size()) throw ParseError(line_no, "wrong number of CSV fields");
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string& f = fields[c];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) throw ParseError(line_no, "bad number '" + f + "'");
      table.columns[c].push_back(v);
    }
  }
  return table;
}

void write_key_values(std::ostream& out, const KeyValues& kv) {
  for (const auto& [key, value] : kv) out << key << '=' << value << '\n';
}

}  // namespace fmaxwell
