#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kpdtm/point_cloud.hpp"

namespace kpdtm {

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest decimal form that parses back to exactly the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline bool is_delim(char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\r';
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_delim(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_delim(line[i])) ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

inline bool parse_field(std::string_view s, double& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

}  // namespace detail

/// Reads numeric rows. Fields may be separated by commas and/or whitespace; a
/// purely non-numeric first line is treated as a header and skipped. Ragged
/// or malformed rows raise CsvError with the 1-based line number.
inline std::vector<std::vector<double>> read_rows(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = detail::split_fields(line);
        if (fields.empty()) continue;

        std::vector<double> row;
        row.reserve(fields.size());
        bool numeric = true;
        for (const auto f : fields) {
            double v = 0.0;
            if (!detail::parse_field(f, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (first_content) {  // header line
                first_content = false;
                continue;
            }
            throw CsvError("line " + std::to_string(line_no) + ": non-numeric field");
        }
        first_content = false;
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw CsvError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(width) + " fields, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline PointCloud read_points(std::istream& in) {
    const auto rows = read_rows(in);
    if (rows.empty()) throw CsvError("no data rows");
    return PointCloud::from_rows(rows);
}

inline PointCloud read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path + "'");
    try {
        return read_points(in);
    } catch (const CsvError& e) {
        throw CsvError(path + ": " + e.what());
    }
}

inline void write_points(std::ostream& out, const PointCloud& cloud, bool header = false) {
    if (header) {
        for (std::size_t a = 0; a < cloud.dim(); ++a) {
            if (a) out << ',';
            out << 'x' << a;
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t a = 0; a < cloud.dim(); ++a) {
            if (a) out << ',';
            out << format_double(p[a]);
        }
        out << '\n';
    }
}

inline void write_points_file(const std::string& path, const PointCloud& cloud,
                              bool header = false) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot open '" + path + "' for writing");
    write_points(out, cloud, header);
}

}  // namespace kpdtm
