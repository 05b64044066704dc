#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ustat/core.hpp"

namespace ustat::csv {

// Comma-separated rows; blank lines and lines starting with '#' are skipped.
// No quoting: fields never contain commas in the formats used here.
struct Row {
    std::size_t line = 0;  // 1-based line number in the source
    std::vector<std::string> fields;
};

std::vector<Row> read_rows(std::istream& in);
std::vector<Row> read_file(const std::string& path);

double parse_double(const std::string& field, std::size_t line, std::size_t column);
long long parse_int(const std::string& field, std::size_t line, std::size_t column);

// Shortest representation that round-trips through parse_double.
std::string format_double(double value);

// Observation file: header row required; feature columns, then an optional
// integer column named `label`.
Sample read_sample(std::istream& in, const std::string& source = "<stream>");
Sample read_sample_file(const std::string& path);
void write_sample(std::ostream& out, const Sample& sample);
void write_sample_file(const std::string& path, const Sample& sample);

}  // namespace ustat::csv
