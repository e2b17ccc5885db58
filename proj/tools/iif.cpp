// Command-line front end for the fixture pipeline.
//
//   iif derive  corpus/riccati-quartic.fix
//   iif reduce  --mode compatibility corpus/cubic-rho.fix
//   iif verify  --system "P = 1 - x^2; Q = 1 - x*y;" --V "(1 - x^2)^2*(1 - 2*x*y + y^2)^(-1/2)"
//   iif series  --order 20 corpus/legendre-quadratic.fix
//   iif corpus  corpus --jobs 4 --json
//
// Exit status: 0 when every report passes, 1 when any fails, 2 for usage or
// parse errors.
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iif/error.hpp"
#include "iif/fixture.hpp"
#include "iif/pipeline.hpp"

namespace fs = std::filesystem;
using namespace iif;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Output {
    bool json = false;
    bool verbose = false;
    bool timing = true;
};

int emit(const std::vector<Report>& reports, const Output& out, const std::vector<std::string>& warnings = {}) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    bool parse_failure = false;
    for (const auto& r : reports) parse_failure = parse_failure || r.parse_error;
    if (out.json) {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(to_json(r, out.timing));
        std::cout << arr.dump(2) << '\n';
    } else {
        int passed = 0;
        for (const auto& r : reports) {
            std::cout << to_text(r, out.verbose || r.status == Status::Fail);
            if (r.status != Status::Fail) ++passed;
        }
        std::cout << passed << '/' << reports.size() << " sections passed\n";
    }
    if (parse_failure && reports.size() == 1) return kExitUsage;
    return all_pass(reports) ? 0 : kExitFail;
}

Fixture load_or_throw(const std::string& path) {
    if (!fs::exists(path)) throw std::runtime_error("no such fixture: " + path);
    return load_fixture(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inverse integrating factors for planar polynomial systems"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    app.add_flag("--json", out.json, "machine-readable report");
    app.add_flag("-v,--verbose", out.verbose, "print step logs and data for passing sections");
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "omit elapsed times from JSON output");

    RunOptions opts;
    std::string fixture_path;
    std::string section;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--section", section, "only the section with this label");
        return cmd;
    };

    auto* derive = add_common(app.add_subcommand("derive", "coefficient relations and triangular substitution"));
    derive->add_option("fixture", fixture_path, "fixture file")->required();

    std::string reduce_mode;
    auto* reduce = add_common(app.add_subcommand("reduce", "equivalence, compatibility or modulo reduction"));
    reduce->add_option("fixture", fixture_path, "fixture file")->required();
    reduce->add_option("--mode", reduce_mode, "equivalence | compatibility | modulo")
        ->check(CLI::IsMember({"equivalence", "compatibility", "modulo"}));

    std::string sys_text, v_text, alpha_text = "1";
    auto* verify = add_common(app.add_subcommand("verify", "exact residual of a candidate V"));
    verify->add_option("fixture", fixture_path, "fixture file");
    verify->add_option("--system", sys_text, "system text, e.g. \"P = -y; Q = x;\"");
    verify->add_option("--V", v_text, "candidate inverse integrating factor");
    verify->add_option("--alpha", alpha_text, "exponent of the generalised equation");

    int order = 0;
    auto* series = add_common(app.add_subcommand("series", "power-series ansatz in y"));
    series->add_option("fixture", fixture_path, "fixture file")->required();
    series->add_option("--order", order, "truncation order")->check(CLI::Range(0, 200));

    auto* numeric = add_common(app.add_subcommand("numeric", "floating-point closedness and path checks"));
    numeric->add_option("fixture", fixture_path, "fixture file")->required();

    std::string corpus_dir = "corpus";
    int jobs = 0;
    auto* corpus = app.add_subcommand("corpus", "every section of every fixture in a directory");
    corpus->add_option("dir", corpus_dir, "fixture directory");
    corpus->add_option("-j,--jobs", jobs, "worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
    corpus->add_option("--order", order, "series truncation order")->check(CLI::Range(0, 200));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    out.timing = !no_timing;
    if (!section.empty()) opts.section = section;
    if (order > 0) opts.series_order = order;
    if (!reduce_mode.empty()) opts.reduce_mode = reduce_mode;

    try {
        if (corpus->parsed()) {
            if (!fs::is_directory(corpus_dir)) {
                std::cerr << "error: not a directory: " << corpus_dir << '\n';
                return kExitUsage;
            }
            CorpusSummary sum = run_corpus(corpus_dir, jobs, opts);
            return emit(sum.reports, out, sum.warnings);
        }

        if (verify->parsed() && fixture_path.empty()) {
            if (sys_text.empty() || v_text.empty()) {
                std::cerr << "error: verify needs a fixture or both --system and --V\n";
                return kExitUsage;
            }
            std::string text = "system: " + sys_text + "\n[verify adhoc]\nV: " + v_text + "\nalpha: " + alpha_text + "\n";
            Fixture fx = parse_fixture(text, "adhoc");
            return emit(run_pipeline(fx, "verify", opts), out);
        }

        Fixture fx = load_or_throw(fixture_path);
        std::string mode = app.get_subcommands().front()->get_name();
        auto reports = run_pipeline(fx, mode, opts);
        if (reports.empty()) {
            std::cerr << "error: " << fixture_path << " has no matching " << mode << " sections\n";
            return kExitUsage;
        }
        return emit(reports, out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
