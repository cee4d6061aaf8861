#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccstat {

// Minimal CSV support: UTF-8, one header row, comma separator, '.' decimal
// point.  Quoting is not interpreted; fields are trimmed of surrounding
// whitespace and trailing CR.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a named column; throws std::invalid_argument when missing.
  std::size_t col(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

bool parse_int(const std::string& field, long long* out);
bool parse_double(const std::string& field, double* out);

void write_curve_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const std::vector<double>& x,
                     const std::vector<double>& y);

// FNV-1a over the raw file bytes, reported as 16 hex digits.  Embedded in
// JSON outputs so results can be traced back to their exact inputs.
std::string file_hash_hex(const std::string& path);

std::string format_double(double v);

}  // namespace ccstat
