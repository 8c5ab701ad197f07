#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fmaxwell {

enum class OutputFormat { CSV, StructuredText };

struct OutputSpec {
  OutputFormat format = OutputFormat::CSV;
  std::string destination = "-";  // "-" is standard output
  int precision = 12;              // significant digits, 6..17
};

void validate(const OutputSpec& spec);

// printf "%.*g": '.' decimal separator, no locale dependence.
std::string format_number(double value, int precision);

// Header row plus one row per index; all columns must have equal length.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

void write_csv(std::ostream& out, const CsvTable& table, int precision);

// Inverse of write_csv. Throws ParseError with the offending line.
CsvTable read_csv(std::istream& in);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// One "key=value" line per entry.
void write_key_values(std::ostream& out, const KeyValues& kv);

}  // namespace fmaxwell
