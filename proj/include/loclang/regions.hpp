#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "loclang/ast.hpp"

namespace loclang::regions {

/// Runtime fault catalog.
enum class FaultCode { F001, F002, F003 };

std::string_view to_string(FaultCode code);
std::string_view describe(FaultCode code);

class RegionFault : public std::runtime_error {
public:
    explicit RegionFault(FaultCode code) : std::runtime_error(std::string(describe(code))), code_(code) {}
    FaultCode code() const { return code_; }

private:
    FaultCode code_;
};

struct Nil {
    friend bool operator==(Nil, Nil) { return true; }
};

/// Reference into a region cell. The generation pins the region instance.
struct RegionRef {
    std::uint32_t depth = 0;
    std::uint32_t cell = 0;
    std::uint64_t generation = 0;
    RefKind kind = RefKind::Local;

    friend bool operator==(const RegionRef& a, const RegionRef& b) {
        return a.depth == b.depth && a.cell == b.cell && a.generation == b.generation;
    }
};

/// Shared or unique reference to a frame slot. Frames share depth and
/// generation with the region of the same block.
struct StackRef {
    std::uint32_t depth = 0;
    std::uint64_t generation = 0;
    std::uint32_t slot = 0;
    RefKind kind = RefKind::Shared;

    friend bool operator==(const StackRef& a, const StackRef& b) {
        return a.depth == b.depth && a.generation == b.generation && a.slot == b.slot;
    }
};

using Value = std::variant<std::int64_t, bool, Nil, RegionRef, StackRef>;

/// Bytes charged per cell: an 8-byte header plus 8 bytes per field.
constexpr std::uint64_t kHeaderBytes = 8;
constexpr std::uint64_t kFieldBytes = 8;
constexpr std::uint64_t cell_size(std::size_t field_count) { return kHeaderBytes + kFieldBytes * field_count; }

struct FixedArena {
    std::uint64_t capacity_bytes = 0;
};

struct ExtensibleArena {
    std::uint64_t initial_chunk_bytes = 4096;
    std::uint64_t growth_factor = 2;
};

using ArenaStrategy = std::variant<FixedArena, ExtensibleArena>;

/// Parses `fixed:<bytes>`, `extensible` or `extensible:<initial>:<factor>`.
/// Throws std::invalid_argument on malformed or out-of-range specs.
ArenaStrategy parse_arena_spec(std::string_view spec);
std::string to_string(const ArenaStrategy& s);

/// Marker for cells that hold a single scalar or reference (a `let loc` of non-record type).
constexpr std::int32_t kScalarCell = -1;

struct Cell {
    std::uint32_t size_bytes = 0;
    std::int32_t shape = kScalarCell;  // record index, or kScalarCell
    std::vector<Value> fields;
};

struct Region {
    std::uint32_t depth = 0;
    std::uint64_t generation = 0;
    std::vector<Cell> cells;
    std::uint64_t bytes_used = 0;
    std::vector<std::uint64_t> chunks;  // extensible only
    std::uint64_t chunk_used = 0;       // bump offset inside the last chunk
};

struct FreeEvent {
    std::uint32_t depth = 0;
    std::uint64_t generation = 0;
    std::uint64_t bytes_freed = 0;

    friend bool operator==(const FreeEvent&, const FreeEvent&) = default;
};

struct RegionStats {
    std::uint64_t regions_opened = 0;
    std::uint64_t regions_freed = 0;
    std::uint64_t allocs = 0;
    std::uint64_t peak_bytes = 0;
    std::uint64_t live_bytes = 0;
    std::vector<FreeEvent> free_events;
};

std::string stats_text(const RegionStats& s);
std::string stats_json(const RegionStats& s);

/// Stack of arenas, one per active block. Not thread-safe; one store per thread.
class RegionStore {
public:
    explicit RegionStore(ArenaStrategy strategy = ExtensibleArena{});

    /// Opens a region one level deeper than the current top.
    std::uint32_t push();

    /// Allocates a cell with `field_count` fields in the region at `depth`.
    /// Throws RegionFault(F001) when a fixed arena would overflow.
    RegionRef alloc(std::uint32_t depth, std::size_t field_count, std::int32_t shape);

    /// Frees the top region in one event and returns the bytes released.
    std::uint64_t free_all();

    /// Throws RegionFault(F002) if the reference's region has been freed.
    const Value& read(const RegionRef& ref, std::uint32_t field) const;
    void write(const RegionRef& ref, std::uint32_t field, Value v);
    const Cell& cell(const RegionRef& ref) const;

    bool is_live(std::uint32_t depth, std::uint64_t generation) const;
    std::size_t depth_count() const { return stack_.size(); }
    const Region& region(std::uint32_t depth) const { return stack_.at(depth); }
    const RegionStats& stats() const { return stats_; }
    const ArenaStrategy& strategy() const { return strategy_; }

private:
    Cell& checked_cell(const RegionRef& ref);
    const Cell& checked_cell(const RegionRef& ref) const;
    void charge(Region& r, std::uint64_t bytes);

    ArenaStrategy strategy_;
    std::vector<Region> stack_;
    std::uint64_t generation_counter_ = 0;
    RegionStats stats_;
};

}  // namespace loclang::regions
