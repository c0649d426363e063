#pragma once

// Named verification suites over configured curve families, with
// JSON-lines reporting.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "norbrack/curve_core.hpp"
#include "norbrack/oneform_span.hpp"

namespace norbrack {

enum class Suite { torsion, variation, bracket, spanning, oneform, arc };

const char* to_string(Suite suite);
Suite suite_from_string(const std::string& name);
const std::vector<Suite>& all_suites();

/// One entry of the "curves" list. family is one of circle, ellipse,
/// fourier, file, great_circle, small_circle, sphere_wave.
struct CurveSpec {
    std::string family = "circle";
    double radius = 1.0;
    double a = 2.0, b = 1.0;
    std::uint64_t seed = 1;
    int modes = 6;
    double decay = 3.0;
    double amplitude = 0.3;
    double height = 0.5;
    int wave = 3;
    std::string path;

    Ambient ambient() const;
    std::string id() const;
    /// Files are resampled nowhere: their node count must equal grid_n.
    DiscreteImmersion build(std::size_t grid_n) const;
};

struct SuiteConfig {
    Suite suite = Suite::bracket;
    std::size_t grid_n = 256;
    /// Trig modes of the coefficient functions; spanning defaults to N/2 - 1.
    std::optional<int> modes;
    /// Finite-difference step; defaults to 1e-5 for bracket, 1e-4 otherwise.
    std::optional<double> eps;
    /// Per-metric tolerance overrides.
    std::map<std::string, double> tolerances;
    /// Empty means the suite's default families for `ambient`.
    std::vector<CurveSpec> curves;
    /// Restricts the default families; unset means every ambient the suite supports.
    std::optional<Ambient> ambient;
    std::string output;
    std::uint64_t seed = 0;
    std::string frames_dir;
    int oneform_count = 20;
    double flow_time = 0.3;
    int flow_steps = 100;

    /// Throws ConfigInvalid.
    void validate() const;
};

/// Parses a config document; `suite` is taken from the document when present
/// and otherwise from `fallback`. Throws ConfigInvalid.
SuiteConfig parse_config(const std::string& json_text, std::optional<Suite> fallback = std::nullopt);
SuiteConfig load_config(const std::filesystem::path& path, std::optional<Suite> fallback = std::nullopt);

struct ReportRecord {
    std::string suite;
    std::string case_id;
    std::size_t grid_n = 0;
    std::string metric;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    static ReportRecord make(std::string suite, std::string case_id, std::size_t grid_n, std::string metric,
                             double value, double tolerance);
    /// One line of JSON, fields in declaration order.
    std::string to_json() const;
};

/// Runs every case of the configured suite. Errors raised inside a case
/// become failed records with metric "error".
std::vector<ReportRecord> run_suite(const SuiteConfig& config);

bool all_pass(const std::vector<ReportRecord>& records);

/// Writes one record per line, replacing the file. Throws IoError.
void emit_report(const std::vector<ReportRecord>& records, const std::filesystem::path& path);

/// sum_{j<=modes} (a_j cos jt + b_j sin jt) with a_j, b_j uniform in [-1, 1).
PeriodicScalarField random_trig_field(std::size_t grid_n, std::uint64_t seed, int modes);

} // namespace norbrack
