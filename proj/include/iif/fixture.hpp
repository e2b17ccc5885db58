#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace iif {

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
};

/// One `[kind label]` block of a fixture file.
struct Section {
    std::string kind;
    std::string label;
    int line = 0;
    std::vector<Entry> entries;

    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    /// Every entry with this key, in file order.
    std::vector<const Entry*> all(const std::string& key) const;
};

/// A corpus file: a header with `family:`, `system:` and `let:` lines,
/// followed by sections. `#` starts a comment; a line starting with
/// whitespace continues the previous value.
struct Fixture {
    std::string id;
    std::string path;
    Section header;
    std::vector<Section> sections;

    std::string system_text() const;
};

/// Throws ParseError with the offending line.
Fixture parse_fixture(const std::string& text, const std::string& id = "");
Fixture load_fixture(const std::filesystem::path& path);

/// Fixture files (`*.fix`) of a directory, sorted by name.
std::vector<std::filesystem::path> list_fixtures(const std::filesystem::path& dir);

}  // namespace iif
