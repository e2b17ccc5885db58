#include "iif/symbol.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

#include "iif/error.hpp"

namespace iif {

namespace {

struct Registry {
    std::shared_mutex mutex;
    std::unordered_map<Var, SymbolInfo> table;
};

Registry& registry() {
    static Registry r;
    return r;
}

int initial_jet_limit() {
    if (const char* env = std::getenv("IIF_JET_LIMIT")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 8;
}

std::atomic<int>& jet_limit_ref() {
    static std::atomic<int> limit{initial_jet_limit()};
    return limit;
}

// FNV-1a over the symbol description; stable across runs and platforms.
Var key_of(const SymbolInfo& s) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint8_t byte) {
        h ^= byte;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint8_t>(s.kind));
    mix(static_cast<std::uint8_t>(s.axis));
    for (int i = 0; i < 4; ++i) mix(static_cast<std::uint8_t>((s.order >> (8 * i)) & 0xff));
    for (char c : s.name) mix(static_cast<std::uint8_t>(c));
    return h;
}

Var intern(SymbolInfo s) {
    Var key = key_of(s);
    auto& reg = registry();
    {
        std::shared_lock lock(reg.mutex);
        auto it = reg.table.find(key);
        if (it != reg.table.end()) return key;
    }
    std::unique_lock lock(reg.mutex);
    auto [it, inserted] = reg.table.emplace(key, std::move(s));
    (void)it;
    (void)inserted;
    return key;
}

}  // namespace

Var var_x() {
    static const Var v = intern({SymKind::X, "x", 0, Axis::X});
    return v;
}

Var var_y() {
    static const Var v = intern({SymKind::Y, "y", 0, Axis::Y});
    return v;
}

Var param(std::string_view name) { return intern({SymKind::Param, std::string(name), 0, Axis::X}); }

Var jet(std::string_view name, int order, Axis axis) {
    if (order > jet_limit())
        throw MathError(ErrorKind::JetLimitExceeded,
                        std::string(name) + " of order " + std::to_string(order));
    return intern({SymKind::Jet, std::string(name), order, axis});
}

const SymbolInfo& info(Var v) {
    auto& reg = registry();
    std::shared_lock lock(reg.mutex);
    return reg.table.at(v);
}

Var next_jet(Var v) {
    const SymbolInfo& s = info(v);
    return jet(s.name, s.order + 1, s.axis);
}

int jet_limit() { return jet_limit_ref().load(); }
void set_jet_limit(int limit) { jet_limit_ref().store(limit); }

std::string display_name(Var v) {
    const SymbolInfo& s = info(v);
    if (s.kind != SymKind::Jet) return s.name;
    std::string out = s.name;
    out.append(static_cast<std::size_t>(s.order), '\'');
    out += s.axis == Axis::X ? "(x)" : "(y)";
    return out;
}

bool display_less(Var a, Var b) {
    if (a == b) return false;
    const SymbolInfo& sa = info(a);
    const SymbolInfo& sb = info(b);
    return std::tie(sa.kind, sa.name, sa.axis, sa.order) < std::tie(sb.kind, sb.name, sb.axis, sb.order);
}

}  // namespace iif
