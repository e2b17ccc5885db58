#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iif/fixture.hpp"

namespace iif {

using Json = nlohmann::ordered_json;

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

enum class Status { Pass, Fail, ConditionalPass };
const char* to_string(Status s);

struct Report {
    std::string fixture;
    std::string section;
    std::string mode;
    Status status = Status::Fail;
    std::vector<Check> checks;
    std::vector<std::string> side_conditions;
    std::vector<std::string> steps;
    /// Error text when the section aborted.
    std::string error;
    bool parse_error = false;
    /// Mode-specific results (relations, conditions, residuals, defects).
    Json data = Json::object();
    double elapsed_ms = 0;

    void check(std::string name, bool pass, std::string detail = "");
    void finish();
};

struct RunOptions {
    /// Overrides the truncation order of series sections.
    std::optional<int> series_order;
    /// Only sections with this label.
    std::optional<std::string> section;
    /// Only reduce sections of this mode (equivalence, compatibility, modulo).
    std::optional<std::string> reduce_mode;
};

/// Numeric tolerances shared by the numeric sections and the acceptance run.
struct NumericTolerances {
    static constexpr double closedness = 1e-6;
    static constexpr double path_gap = 1e-8;
    static constexpr double negative_floor = 1e-3;
    static constexpr double drift = 1e-6;
    static constexpr double fd_step = 1e-5;
    static constexpr int quadrature_nodes = 64;
};

/// Default series truncation: IIF_SERIES_ORDER or 24.
int default_series_order();

Report run_section(const Fixture& fx, const Section& s, const RunOptions& opts = {});
/// Sections of one kind (derive, reduce, verify, series, numeric).
std::vector<Report> run_pipeline(const Fixture& fx, const std::string& mode, const RunOptions& opts = {});
std::vector<Report> run_fixture(const Fixture& fx, const RunOptions& opts = {});

struct CorpusSummary {
    std::vector<Report> reports;
    std::vector<std::string> warnings;
    int fixtures = 0;
};

/// Every fixture of `dir` in a pool of `jobs` workers; reports in fixture order.
CorpusSummary run_corpus(const std::filesystem::path& dir, int jobs = 0, const RunOptions& opts = {});

bool all_pass(const std::vector<Report>& reports);

Json to_json(const Report& r, bool with_timing = true);
std::string to_text(const Report& r, bool verbose = false);

}  // namespace iif
