#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "core/field.hpp"
#include "core/grid.hpp"

namespace nsbench {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);
double parse_double(const std::string& s);

std::string snapshot_name(const std::string& base, long counter); // "p" + 000123 + ".csv"

/// One text row per interior i, the row's j-values comma separated with no
/// trailing comma, matching the reference program's output loops.
void write_field_csv(const Field2D& f, const StaggeredGrid& g, const std::filesystem::path& path);

/// Whitespace-tolerant reader for the same layout; rows[r][c] maps to
/// interior cell (r+1, c+1).
std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path);

class MonitorWriter {
public:
    explicit MonitorWriter(const std::filesystem::path& path);
    void append(double time, double u);

private:
    std::ofstream out_;
    std::filesystem::path path_;
};

std::vector<std::pair<double, double>> read_monitor(const std::filesystem::path& path);

} // namespace nsbench
