#include "horolab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace horolab {

const char* version_string() { return "horolab 1.0.0"; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

int Report::passed() const {
    int k = 0;
    for (const auto& c : checks) k += c.pass ? 1 : 0;
    return k;
}

int Report::failed() const { return static_cast<int>(checks.size()) - passed(); }

double Report::worst_residual() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, std::abs(c.residual));
    return w;
}

void Report::add(const std::string& name, double computed, double oracle, double bound) {
    CheckRecord r;
    r.name = name;
    r.computed = computed;
    r.oracle = oracle;
    r.residual = std::abs(computed - oracle);
    r.bound = bound;
    r.pass = std::isfinite(r.residual) && r.residual <= bound;
    checks.push_back(std::move(r));
}

void Report::add_margin(const std::string& name, double margin, double bound) {
    CheckRecord r;
    r.name = name;
    r.computed = margin;
    r.oracle = 0.0;
    r.residual = std::min(margin, 0.0);
    r.bound = bound;
    r.pass = std::isfinite(margin) && margin >= -bound;
    checks.push_back(std::move(r));
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["config"] = config_echo.empty() ? nlohmann::json::object()
                                      : nlohmann::json::parse(config_echo);
    j["provenance"] = {{"seed", seed},
                       {"version", version_string()},
                       {"config_hash", config_hash}};
    auto& arr = j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"computed", c.computed},
                       {"oracle", c.oracle},
                       {"residual", c.residual},
                       {"bound", c.bound},
                       {"pass", c.pass}});
    j["summary"] = {{"checks", checks.size()},
                    {"passed", passed()},
                    {"failed", failed()},
                    {"worst_residual", worst_residual()},
                    {"pass", all_pass()}};
    return j;
}

std::vector<std::string> Report::write(const std::string& dir, const std::string& name) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> files;

    const fs::path jpath = fs::path(dir) / (name + ".report.json");
    {
        std::ofstream out(jpath, std::ios::binary);
        if (!out) throw std::runtime_error("report: cannot write " + jpath.string());
        out << to_json().dump(2) << "\n";
    }
    files.push_back(jpath.string());

    for (const auto& t : tables) {
        const fs::path cpath = fs::path(dir) / (name + "." + t.name + ".csv");
        std::ofstream out(cpath, std::ios::binary);
        if (!out) throw std::runtime_error("report: cannot write " + cpath.string());
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << t.columns[i];
        out << "\r\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << format_double(row[i]);
            out << "\r\n";
        }
        files.push_back(cpath.string());
    }

    for (const auto& [suffix, svg] : plots) {
        const fs::path ppath = fs::path(dir) / (name + "." + suffix + ".svg");
        std::ofstream out(ppath, std::ios::binary);
        if (!out) throw std::runtime_error("report: cannot write " + ppath.string());
        out << svg;
        files.push_back(ppath.string());
    }
    return files;
}

std::string convergence_svg(const Table& table, std::size_t x_col, std::size_t y_col) {
    const int W = 480, H = 320, M = 48;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& row : table.rows) {
        xmin = std::min(xmin, row[x_col]);
        xmax = std::max(xmax, row[x_col]);
        const double ly = std::log10(std::max(1e-300, std::abs(row[y_col])));
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
                      "\" height=\"" + std::to_string(H) + "\">\n<rect width=\"100%\" "
                      "height=\"100%\" fill=\"white\"/>\n<polyline fill=\"none\" "
                      "stroke=\"#246\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : table.rows) {
        const double px = M + (W - 2 * M) * (row[x_col] - xmin) / (xmax - xmin);
        const double ly = std::log10(std::max(1e-300, std::abs(row[y_col])));
        const double py = H - M - (H - 2 * M) * (ly - ymin) / (ymax - ymin);
        svg += format_double(px) + "," + format_double(py) + " ";
    }
    svg += "\"/>\n<text x=\"" + std::to_string(M) + "\" y=\"20\" font-size=\"12\">" +
           table.columns[y_col] + " (log10) vs " + table.columns[x_col] + "</text>\n</svg>\n";
    return svg;
}

}  // namespace horolab
