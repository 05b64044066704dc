#include "ustat/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ustat::csv {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

std::string where(std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column + 1);
}

}  // namespace

std::vector<Row> read_rows(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        Row row;
        row.line = number;
        std::size_t start = 0;
        for (;;) {
            const auto comma = t.find(',', start);
            row.fields.push_back(trim(std::string_view(t).substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Row> read_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open " + path);
    return read_rows(in);
}

double parse_double(const std::string& field, std::size_t line, std::size_t column) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    if (!field.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc() || ptr != last) {
        fail(ErrorCode::ParseError, "non-numeric value '" + field + "' at " + where(line, column));
    }
    return value;
}

long long parse_int(const std::string& field, std::size_t line, std::size_t column) {
    long long value = 0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc() || ptr != last) {
        fail(ErrorCode::ParseError, "non-integer value '" + field + "' at " + where(line, column));
    }
    return value;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

Sample read_sample(std::istream& in, const std::string& source) {
    const auto rows = read_rows(in);
    require(!rows.empty(), ErrorCode::ParseError, source + ": missing header row");
    const auto& header = rows.front().fields;
    const bool labelled = header.back() == "label";
    const std::size_t dim = header.size() - (labelled ? 1 : 0);
    require(dim >= 1, ErrorCode::ParseError, source + ": no feature columns");
    require(rows.size() >= 2, ErrorCode::ParseError, source + ": no observations");

    std::vector<double> values;
    values.reserve((rows.size() - 1) * dim);
    std::vector<int> labels;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != header.size()) {
            fail(ErrorCode::ParseError, source + ": ragged row at line " + std::to_string(row.line) + " (expected " +
                                            std::to_string(header.size()) + " fields, got " +
                                            std::to_string(row.fields.size()) + ")");
        }
        for (std::size_t c = 0; c < dim; ++c) values.push_back(parse_double(row.fields[c], row.line, c));
        if (labelled) labels.push_back(static_cast<int>(parse_int(row.fields[dim], row.line, dim)));
    }
    return Sample(dim, std::move(values), std::move(labels));
}

Sample read_sample_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open " + path);
    return read_sample(in, path);
}

void write_sample(std::ostream& out, const Sample& sample) {
    for (std::size_t c = 0; c < sample.dim(); ++c) out << (c ? "," : "") << "x" << c;
    if (sample.has_labels()) out << ",label";
    out << '\n';
    for (std::size_t i = 0; i < sample.size(); ++i) {
        auto row = sample.row(i);
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
        if (sample.has_labels()) out << ',' << sample.label(i);
        out << '\n';
    }
}

void write_sample_file(const std::string& path, const Sample& sample) {
    std::ofstream out(path);
    require(static_cast<bool>(out), ErrorCode::ParseError, "cannot write " + path);
    write_sample(out, sample);
}

}  // namespace ustat::csv
