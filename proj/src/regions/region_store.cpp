#include <charconv>
#include <sstream>

#include <json.hpp>

#include "loclang/regions.hpp"

namespace loclang::regions {

std::string_view to_string(FaultCode code) {
    switch (code) {
        case FaultCode::F001: return "F001";
        case FaultCode::F002: return "F002";
        case FaultCode::F003: return "F003";
    }
    return "F???";
}

std::string_view describe(FaultCode code) {
    switch (code) {
        case FaultCode::F001: return "arena overflow";
        case FaultCode::F002: return "dangling region access";
        case FaultCode::F003: return "nil dereference";
    }
    return "unknown fault";
}

namespace {

std::uint64_t parse_count(std::string_view text, std::string_view spec) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed arena spec '" + std::string(spec) + "'");
    }
    return v;
}

}  // namespace

ArenaStrategy parse_arena_spec(std::string_view spec) {
    constexpr std::string_view fixed = "fixed:";
    constexpr std::string_view ext = "extensible";
    if (spec.substr(0, fixed.size()) == fixed) {
        const std::uint64_t cap = parse_count(spec.substr(fixed.size()), spec);
        if (cap == 0) throw std::invalid_argument("fixed arena capacity must be positive");
        return FixedArena{cap};
    }
    if (spec == ext) return ExtensibleArena{};
    if (spec.substr(0, ext.size() + 1) == "extensible:") {
        std::string_view rest = spec.substr(ext.size() + 1);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw std::invalid_argument("extensible spec needs <initial>:<factor>");
        ExtensibleArena a{parse_count(rest.substr(0, colon), spec), parse_count(rest.substr(colon + 1), spec)};
        if (a.initial_chunk_bytes == 0) throw std::invalid_argument("initial chunk size must be positive");
        if (a.growth_factor < 2) throw std::invalid_argument("growth factor must be at least 2");
        return a;
    }
    throw std::invalid_argument("unknown arena spec '" + std::string(spec) + "'");
}

std::string to_string(const ArenaStrategy& s) {
    if (const auto* f = std::get_if<FixedArena>(&s)) return "fixed:" + std::to_string(f->capacity_bytes);
    const auto& e = std::get<ExtensibleArena>(s);
    return "extensible:" + std::to_string(e.initial_chunk_bytes) + ":" + std::to_string(e.growth_factor);
}

RegionStore::RegionStore(ArenaStrategy strategy) : strategy_(strategy) {}

std::uint32_t RegionStore::push() {
    Region r;
    r.depth = static_cast<std::uint32_t>(stack_.size());
    r.generation = ++generation_counter_;
    stack_.push_back(std::move(r));
    ++stats_.regions_opened;
    return stack_.back().depth;
}

void RegionStore::charge(Region& r, std::uint64_t bytes) {
    if (const auto* fixed = std::get_if<FixedArena>(&strategy_)) {
        if (r.bytes_used + bytes > fixed->capacity_bytes) throw RegionFault(FaultCode::F001);
        return;
    }
    const auto& ext = std::get<ExtensibleArena>(strategy_);
    if (!r.chunks.empty() && r.chunk_used + bytes <= r.chunks.back()) {
        r.chunk_used += bytes;
        return;
    }
    std::uint64_t next = r.chunks.empty() ? ext.initial_chunk_bytes : r.chunks.back() * ext.growth_factor;
    while (next < bytes) next *= ext.growth_factor;
    r.chunks.push_back(next);
    r.chunk_used = bytes;
}

RegionRef RegionStore::alloc(std::uint32_t depth, std::size_t field_count, std::int32_t shape) {
    Region& r = stack_.at(depth);
    const std::uint64_t bytes = cell_size(field_count);
    charge(r, bytes);
    Cell c;
    c.size_bytes = static_cast<std::uint32_t>(bytes);
    c.shape = shape;
    c.fields.assign(field_count, Value{Nil{}});
    r.cells.push_back(std::move(c));
    r.bytes_used += bytes;
    ++stats_.allocs;
    stats_.live_bytes += bytes;
    stats_.peak_bytes = std::max(stats_.peak_bytes, stats_.live_bytes);
    return RegionRef{depth, static_cast<std::uint32_t>(r.cells.size() - 1), r.generation, RefKind::Local};
}

std::uint64_t RegionStore::free_all() {
    Region& top = stack_.back();
    const std::uint64_t freed = top.bytes_used;
    stats_.free_events.push_back(FreeEvent{top.depth, top.generation, freed});
    stats_.live_bytes -= freed;
    ++stats_.regions_freed;
    stack_.pop_back();
    return freed;
}

bool RegionStore::is_live(std::uint32_t depth, std::uint64_t generation) const {
    return depth < stack_.size() && stack_[depth].generation == generation;
}

const Cell& RegionStore::checked_cell(const RegionRef& ref) const {
    if (!is_live(ref.depth, ref.generation)) throw RegionFault(FaultCode::F002);
    return stack_[ref.depth].cells.at(ref.cell);
}

Cell& RegionStore::checked_cell(const RegionRef& ref) {
    if (!is_live(ref.depth, ref.generation)) throw RegionFault(FaultCode::F002);
    return stack_[ref.depth].cells.at(ref.cell);
}

const Cell& RegionStore::cell(const RegionRef& ref) const { return checked_cell(ref); }

const Value& RegionStore::read(const RegionRef& ref, std::uint32_t field) const {
    return checked_cell(ref).fields.at(field);
}

void RegionStore::write(const RegionRef& ref, std::uint32_t field, Value v) {
    checked_cell(ref).fields.at(field) = std::move(v);
}

std::string stats_text(const RegionStats& s) {
    std::ostringstream out;
    out << "regions_opened  " << s.regions_opened << "\n";
    out << "regions_freed   " << s.regions_freed << "\n";
    out << "allocs          " << s.allocs << "\n";
    out << "peak_bytes      " << s.peak_bytes << "\n";
    out << "live_bytes      " << s.live_bytes << "\n";
    for (const auto& e : s.free_events) {
        out << "free depth=" << e.depth << " gen=" << e.generation << " bytes=" << e.bytes_freed << "\n";
    }
    return out.str();
}

std::string stats_json(const RegionStats& s) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : s.free_events) {
        events.push_back({{"depth", e.depth}, {"generation", e.generation}, {"bytes", e.bytes_freed}});
    }
    nlohmann::json j{
        {"regions_opened", s.regions_opened}, {"regions_freed", s.regions_freed}, {"allocs", s.allocs},
        {"peak_bytes", s.peak_bytes},         {"live_bytes", s.live_bytes},       {"free_events", events},
    };
    return j.dump();
}

}  // namespace loclang::regions
