#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace horolab {

/// One verified quantity: a computed value against its oracle or bound.
struct CheckRecord {
    std::string name;
    double computed = 0.0;
    double oracle = 0.0;
    double residual = 0.0;  // |computed - oracle| or the margin being tested
    double bound = 0.0;     // tolerance / certificate the residual is held to
    bool pass = false;
};

/// A CSV table attached to a report (RFC 4180, CRLF line endings).
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Report {
    std::string experiment;
    std::string config_echo;  // canonical JSON text of the resolved config
    std::vector<CheckRecord> checks;
    std::vector<Table> tables;
    /// (suffix, svg text) pairs written as <name>.<suffix>.svg
    std::vector<std::pair<std::string, std::string>> plots;
    std::uint64_t seed = 0;
    std::string version;
    std::string config_hash;  // FNV-1a of config_echo

    int passed() const;
    int failed() const;
    double worst_residual() const;
    bool all_pass() const { return failed() == 0; }

    void add(const std::string& name, double computed, double oracle, double bound);
    /// Record a margin check: pass iff margin >= -bound.
    void add_margin(const std::string& name, double margin, double bound);

    nlohmann::json to_json() const;

    /// Write <name>.report.json and one <name>.<table>.csv per table into
    /// dir; returns the list of files written. All numeric output is
    /// formatted with round-trip precision so reruns are byte-identical.
    std::vector<std::string> write(const std::string& dir, const std::string& name) const;
};

std::string format_double(double v);
std::uint64_t fnv1a(const std::string& text);

/// Library version string embedded in report provenance.
const char* version_string();

/// Render residual-vs-radius data as a small SVG line chart (presentation
/// only; never an input to checks).
std::string convergence_svg(const Table& table, std::size_t x_col, std::size_t y_col);

}  // namespace horolab
