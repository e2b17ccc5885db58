#include <filesystem>
#include <fstream>
#include <set>

#include <doctest.h>

#include "iif/error.hpp"
#include "iif/pipeline.hpp"
#include "support.hpp"

using namespace iif;
using namespace iif::test;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = IIF_CORPUS_DIR;

fs::path scratch_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("iif-test-" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("system grammar") {
    PlanarSystem s = Sys("P = -y; Q = g0(x) + g2(x)*y^2 + g4(x)*y^4;");
    CHECK(s.P() == F("-y"));
    CHECK(s.Q() == F("g0(x) + g2(x)*y^2 + g4(x)*y^4"));
    CHECK(Sys("Q = 1 - x*y; P = 1 - x^2;").P() == F("1 - x^2"));
    CHECK_THROWS_AS(Sys("P = y; Q = y^2;"), MathError);

    try {
        Sys("P = -y;\nQ = x + * 2;");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
    CHECK_THROWS_AS(F("x^(1/2)"), ParseError);
    CHECK(F("g0''(x) + rho") == jetf("g0", 2) + Frac::variable(param("rho")));
    CHECK(F("0.5*x") == F("1/2*x"));
}

TEST_CASE("fixture format") {
    Fixture fx = parse_fixture(
        "# comment\n"
        "family: demo\n"
        "system: P = -y;\n"
        "    Q = x;\n"
        "\n"
        "[verify circle]\n"
        "V: x^2 + y^2\n"
        "relation y^1: h0'(x)\n"
        "let: a = 1\n"
        "let: b = 2\n",
        "demo");
    CHECK(fx.id == "demo");
    CHECK(fx.system_text() == "P = -y; Q = x;");
    REQUIRE(fx.sections.size() == 1);
    const Section& s = fx.sections[0];
    CHECK(s.kind == "verify");
    CHECK(s.label == "circle");
    CHECK(s.get("V") == std::optional<std::string>("x^2 + y^2"));
    CHECK(s.all("let").size() == 2);
    CHECK(s.get_or("alpha", "1") == "1");

    CHECK_THROWS_AS(parse_fixture("system: P = 1; Q = 0;\n[plot]\n", "x"), ParseError);
    CHECK_THROWS_AS(parse_fixture("system P = 1\n", "x"), ParseError);
    CHECK_THROWS_AS(parse_fixture("    continued\n", "x"), ParseError);

    auto reports = run_fixture(fx);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].status == Status::Pass);
}

TEST_CASE("every corpus system round-trips through its text form") {
    auto files = list_fixtures(kCorpus);
    CHECK(files.size() == 12);
    for (const auto& f : files) {
        Fixture fx = load_fixture(f);
        PlanarSystem s = parse_system(fx.system_text());
        PlanarSystem back = parse_system(serialize(s));
        CHECK(back.P() == s.P());
        CHECK(back.Q() == s.Q());
        CHECK(serialize(back) == serialize(s));
    }
}

TEST_CASE("corpus passes and reports are deterministic") {
    CorpusSummary a = run_corpus(kCorpus, 4);
    CHECK(a.fixtures == 12);
    CHECK(a.warnings.empty());
    std::set<std::string> ids;
    std::size_t checks = 0;
    for (const auto& r : a.reports) {
        INFO(to_text(r, true));
        CHECK(r.status != Status::Fail);
        ids.insert(r.fixture);
        checks += r.checks.size();
    }
    CHECK(ids.size() == 12);
    CHECK(checks >= 30);
    CHECK(all_pass(a.reports));

    CorpusSummary b = run_corpus(kCorpus, 1);
    REQUIRE(a.reports.size() == b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i)
        CHECK(to_json(a.reports[i], false).dump() == to_json(b.reports[i], false).dump());
}

TEST_CASE("pipeline modes") {
    Fixture rho = load_fixture(kCorpus / "cubic-rho.fix");
    auto verify = run_pipeline(rho, "verify");
    REQUIRE(verify.size() == 1);
    CHECK(verify[0].status == Status::Pass);

    RunOptions only;
    only.section = "rho2";
    auto reduce = run_pipeline(rho, "reduce", only);
    REQUIRE(reduce.size() == 1);
    CHECK(reduce[0].section == "rho2");
    CHECK(reduce[0].data["outcome"] == "single-ode");
    // Divisions by x and 1 + 2x are recorded.
    CHECK(reduce[0].status == Status::ConditionalPass);
    CHECK_FALSE(reduce[0].side_conditions.empty());

    RunOptions modulo;
    modulo.reduce_mode = "modulo";
    auto sq = run_pipeline(load_fixture(kCorpus / "riccati-quartic.fix"), "reduce", modulo);
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].status == Status::Pass);

    RunOptions deep;
    deep.series_order = 24;
    auto ser = run_pipeline(load_fixture(kCorpus / "legendre-quadratic.fix"), "series", deep);
    REQUIRE(ser.size() == 1);
    CHECK(ser[0].data["order"] == 24);
    CHECK(ser[0].status == Status::Pass);
}

TEST_CASE("wrong expectations fail") {
    Fixture fx = parse_fixture(
        "system: P = 1 - x^2; Q = 1 - x*y;\n"
        "[verify wrong]\n"
        "V: (1 - x^2)^2*(1 - 2*x*y + y^2)^(-1/3)\n"
        "[series wrong]\n"
        "family: chebyshev\n"
        "q: (1 - x^2)^2\n"
        "order: 6\n"
        "[numeric wrong]\n"
        "V: (1 - x^2)*(1 - 2*x*y + y^2)^(-1/2)\n"
        "domain: 0 0 0.3 0.2\n",
        "wrong");
    for (const auto& r : run_fixture(fx)) {
        INFO(to_text(r, true));
        CHECK(r.status == Status::Fail);
    }
}

TEST_CASE("corpus isolation") {
    fs::path empty = scratch_dir("empty");
    CorpusSummary none = run_corpus(empty);
    CHECK(none.reports.empty());
    CHECK(none.fixtures == 0);
    CHECK(all_pass(none.reports));

    fs::path mixed = scratch_dir("mixed");
    fs::copy_file(kCorpus / "legendre-quadratic.fix", mixed / "legendre-quadratic.fix");
    write(mixed / "broken.fix", "system: P = 1 - x^2; Q = 1 - x*y;\n[verify]\nV: (1 - x^2\n");
    write(mixed / "garbled.fix", "this is not a fixture\n");
    CorpusSummary s = run_corpus(mixed, 2);
    int broken = 0, good = 0;
    for (const auto& r : s.reports) {
        if (r.fixture == "legendre-quadratic") {
            CHECK(r.status == Status::Pass);
            ++good;
        } else {
            CHECK(r.status == Status::Fail);
            CHECK(r.parse_error);
            ++broken;
        }
    }
    CHECK(good == 3);
    CHECK(broken == 2);
    CHECK_FALSE(all_pass(s.reports));
}

TEST_CASE("json report fields") {
    Fixture fx = load_fixture(kCorpus / "chebyshev-quadratic.fix");
    RunOptions o;
    o.section = "chebyshev";
    auto r = run_pipeline(fx, "series", o);
    REQUIRE(r.size() == 1);
    Json j = to_json(r[0]);
    CHECK(j["fixture"] == "chebyshev-quadratic");
    CHECK(j["mode"] == "series");
    CHECK(j["status"] == "pass");
    CHECK(j.contains("elapsed_ms"));
    CHECK_FALSE(to_json(r[0], false).contains("elapsed_ms"));
    CHECK(j["checks"].size() == 3);
}
