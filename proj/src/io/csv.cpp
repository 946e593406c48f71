#include "io/csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "core/errors.hpp"

namespace nsbench {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos)
        throw IoError("empty numeric field");
    double v = 0.0;
    const char* first = s.data() + a;
    const char* last = s.data() + b + 1;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw IoError("bad numeric field '" + s + "'");
    return v;
}

std::string snapshot_name(const std::string& base, long counter) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%06ld", counter);
    return base + buf + ".csv";
}

void write_field_csv(const Field2D& f, const StaggeredGrid& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    for (int i = 1; i <= g.m - 2; ++i) {
        for (int j = 1; j <= g.n - 2; ++j) {
            out << format_double(f(i, j));
            if (j < g.n - 2) out << ',';
        }
        out << '\n';
    }
    if (!out)
        throw IoError("write failed for " + path.string());
}

std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(parse_double(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

MonitorWriter::MonitorWriter(const std::filesystem::path& path) : out_(path), path_(path) {
    if (!out_)
        throw IoError("cannot open " + path.string() + " for writing");
}

void MonitorWriter::append(double time, double u) {
    out_ << format_double(time) << ',' << format_double(u) << '\n';
    if (!out_)
        throw IoError("write failed for " + path_.string());
}

std::vector<std::pair<double, double>> read_monitor(const std::filesystem::path& path) {
    std::vector<std::pair<double, double>> series;
    for (const auto& row : read_csv_rows(path)) {
        if (row.size() != 2)
            throw IoError("monitor rows need two columns in " + path.string());
        series.emplace_back(row[0], row[1]);
    }
    return series;
}

} // namespace nsbench
