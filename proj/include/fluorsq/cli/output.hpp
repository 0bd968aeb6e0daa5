#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fluorsq::cli {

// Column-major numeric table; column 0 is the abscissa.
struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    void add(std::string header, std::vector<double> values);
};

// Nine significant digits, '.' decimal separator, '\n' line endings.
std::string format_number(double value);
std::string to_csv(const Table& table);

// Minimal line plot of every column against column 0.
std::string to_svg(const Table& table, const std::string& title);

// Writes through a temporary file in the same directory and renames it over
// the destination. Creates missing parent directories.
void write_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace fluorsq::cli
