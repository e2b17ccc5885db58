#include "iif/fixture.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "iif/error.hpp"

namespace iif {

namespace {

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c); };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

const std::set<std::string> kSectionKinds = {"derive", "reduce", "verify", "series", "numeric"};

}  // namespace

std::optional<std::string> Section::get(const std::string& key) const {
    for (const Entry& e : entries)
        if (e.key == key) return e.value;
    return std::nullopt;
}

std::string Section::get_or(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

std::vector<const Entry*> Section::all(const std::string& key) const {
    std::vector<const Entry*> out;
    for (const Entry& e : entries)
        if (e.key == key) out.push_back(&e);
    return out;
}

std::string Fixture::system_text() const {
    auto s = header.get("system");
    if (!s) throw ParseError("fixture '" + id + "' has no system", header.line, 1);
    return *s;
}

Fixture parse_fixture(const std::string& text, const std::string& id) {
    Fixture fx;
    fx.id = id;
    fx.header.kind = "header";
    fx.header.line = 1;
    Section* cur = &fx.header;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        if (trim(line).empty()) continue;
        if (std::isspace(static_cast<unsigned char>(line[0]))) {
            if (cur->entries.empty()) throw ParseError("continuation line without a key", lineno, 1);
            cur->entries.back().value += " " + trim(line);
            continue;
        }
        line = trim(line);
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", lineno, static_cast<int>(line.size()));
            std::istringstream hs(line.substr(1, line.size() - 2));
            Section s;
            s.line = lineno;
            hs >> s.kind;
            std::getline(hs, s.label);
            s.label = trim(s.label);
            if (!kSectionKinds.count(s.kind)) throw ParseError("unknown section kind '" + s.kind + "'", lineno, 2);
            if (s.label.empty()) s.label = s.kind;
            fx.sections.push_back(std::move(s));
            cur = &fx.sections.back();
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno, 1);
        cur->entries.push_back({trim(line.substr(0, colon)), trim(line.substr(colon + 1)), lineno});
    }
    if (auto fam = fx.header.get("family"); fam && fx.id.empty()) fx.id = *fam;
    return fx;
}

Fixture load_fixture(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw MathError(ErrorKind::Unsupported, "cannot open " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    Fixture fx = parse_fixture(ss.str(), path.stem().string());
    fx.path = path.string();
    return fx;
}

std::vector<std::filesystem::path> list_fixtures(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    if (!std::filesystem::is_directory(dir)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".fix") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace iif
