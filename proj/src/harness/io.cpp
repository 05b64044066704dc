#include <fstream>

#include "ustat/csv.hpp"
#include "ustat/harness.hpp"

namespace ustat {

SampleSet load_csv_dataset(const std::vector<std::string>& paths) {
    require(!paths.empty(), ErrorCode::EmptyProblem, "no dataset files given");
    std::vector<Sample> blocks;
    for (const auto& p : paths) blocks.push_back(csv::read_sample_file(p));
    return SampleSet(std::move(blocks));
}

NestedPartitions load_partitions_csv(const std::string& path) {
    const auto rows = csv::read_file(path);
    require(!rows.empty(), ErrorCode::ParseError, path + ": missing header row");
    const std::size_t n = rows.front().fields.size();
    NestedPartitions out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const auto m = static_cast<std::uint32_t>(r);
        require(row.fields.size() == n, ErrorCode::ParseError,
                path + ": ragged row at line " + std::to_string(row.line) + " (expected " + std::to_string(n) +
                    " fields, got " + std::to_string(row.fields.size()) + ")");
        std::vector<std::uint32_t> labels(n);
        for (std::size_t c = 0; c < n; ++c) {
            const long long v = csv::parse_int(row.fields[c], row.line, c);
            if (v < 0 || v >= static_cast<long long>(m)) {
                fail(ErrorCode::ParseError, path + ": label " + row.fields[c] + " out of range [0, " +
                                                std::to_string(m) + ") at line " + std::to_string(row.line) +
                                                ", column " + std::to_string(c + 1));
            }
            labels[c] = static_cast<std::uint32_t>(v);
        }
        out.emplace_back(std::move(labels), m);
    }
    require(!out.empty(), ErrorCode::ParseError, path + ": no partitions");
    return out;
}

void write_partitions_csv(const std::string& path, const NestedPartitions& partitions) {
    std::ofstream out(path);
    require(static_cast<bool>(out), ErrorCode::ParseError, "cannot write " + path);
    const std::size_t n = partitions.empty() ? 0 : partitions.front().size();
    for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << "p" << i;
    out << '\n';
    for (const auto& p : partitions) {
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p.labels[i];
        out << '\n';
    }
}

}  // namespace ustat
