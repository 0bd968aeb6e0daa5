#include "fluorsq/cli/output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace fluorsq::cli {

void Table::add(std::string header, std::vector<double> values) {
    if (!columns.empty() && values.size() != rows()) throw std::invalid_argument("Table::add: column length mismatch");
    headers.push_back(std::move(header));
    columns.push_back(std::move(values));
}

std::string format_number(double value) {
    if (value == 0.0) value = 0.0; // folds -0 into 0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.headers.size(); ++c) {
        if (c) out += ',';
        out += table.headers[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += format_number(table.columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

namespace {

constexpr double kWidth = 720.0, kHeight = 440.0;
constexpr double kLeft = 80.0, kRight = 150.0, kTop = 40.0, kBottom = 50.0;
constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

std::string to_svg(const Table& table, const std::string& title) {
    if (table.columns.size() < 2 || table.rows() < 2) throw std::invalid_argument("to_svg: nothing to plot");
    const auto& x = table.columns.front();
    const double xmin = *std::min_element(x.begin(), x.end());
    const double xmax = *std::max_element(x.begin(), x.end());
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        for (double v : table.columns[c]) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (ymax - ymin < 1e-300) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    const auto sx = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * plot_w; };
    const auto sy = [&](double v) { return kTop + (ymax - v) / (ymax - ymin) * plot_h; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth, "%.0f") + "\" height=\"" +
         fmt(kHeight, "%.0f") + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + fmt(kLeft) + "\" y=\"24\" font-size=\"14\">" + title + "</text>\n";
    s += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w) + "\" height=\"" +
         fmt(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
    if (ymin < 0.0 && ymax > 0.0) {
        s += "<line x1=\"" + fmt(kLeft) + "\" x2=\"" + fmt(kLeft + plot_w) + "\" y1=\"" + fmt(sy(0.0)) + "\" y2=\"" +
             fmt(sy(0.0)) + "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        s += "<text x=\"" + fmt(sx(xv)) + "\" y=\"" + fmt(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
             fmt(xv, "%.4g") + "</text>\n";
        s += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(sy(yv) + 4) + "\" text-anchor=\"end\">" +
             fmt(yv, "%.3g") + "</text>\n";
    }
    s += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - 10) + "\" text-anchor=\"middle\">" +
         table.headers.front() + "</text>\n";

    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        const char* color = kColors[(c - 1) % kColors.size()];
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t r = 0; r < table.rows(); ++r) {
            if (r) s += ' ';
            s += fmt(sx(x[r])) + "," + fmt(sy(table.columns[c][r]));
        }
        s += "\"/>\n";
        const double ly = kTop + 16.0 * static_cast<double>(c);
        s += "<line x1=\"" + fmt(kWidth - kRight + 12) + "\" x2=\"" + fmt(kWidth - kRight + 36) + "\" y1=\"" +
             fmt(ly) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + fmt(kWidth - kRight + 42) + "\" y=\"" + fmt(ly + 4) + "\">" + table.headers[c] +
             "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

} // namespace fluorsq::cli
