#include <gtest/gtest.h>

#include <set>

#include "loclang/regions.hpp"

using namespace loclang;
using namespace loclang::regions;

namespace {

constexpr std::int32_t kNode = 0;  // val, prev, next

FaultCode fault_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const RegionFault& e) {
        return e.code();
    }
    ADD_FAILURE() << "no fault";
    return FaultCode::F001;
}

}  // namespace

TEST(RegionStore, PushDepths) {
    RegionStore s;
    EXPECT_EQ(s.push(), 0u);
    EXPECT_EQ(s.push(), 1u);
    const auto g1 = s.region(1).generation;
    EXPECT_EQ(s.push(), 2u);
    EXPECT_EQ(s.push(), 3u);
    EXPECT_GT(s.region(3).generation, s.region(2).generation);
    EXPECT_GT(s.region(2).generation, g1);
    EXPECT_EQ(s.stats().regions_opened, 4u);
}

TEST(RegionStore, ThousandGenerations) {
    RegionStore s;
    s.push();
    std::set<std::uint64_t> gens{s.region(0).generation};
    for (int i = 0; i < 1000; ++i) {
        gens.insert(s.region(s.push()).generation);
        s.free_all();
    }
    EXPECT_EQ(gens.size(), 1001u);
}

TEST(RegionStore, NodeSize) {
    EXPECT_EQ(cell_size(3), 32u);
    RegionStore s;
    s.push();
    RegionRef r = s.alloc(0, 3, kNode);
    EXPECT_EQ(s.cell(r).size_bytes, 32u);
    EXPECT_EQ(s.region(0).bytes_used, 32u);
    EXPECT_EQ(s.stats().allocs, 1u);
}

TEST(RegionStore, FixedOverflow) {
    RegionStore fits(FixedArena{64});
    fits.push();
    fits.alloc(0, 3, kNode);
    fits.alloc(0, 3, kNode);
    EXPECT_EQ(fits.region(0).bytes_used, 64u);

    RegionStore s(FixedArena{63});
    s.push();
    s.alloc(0, 3, kNode);
    EXPECT_EQ(fault_of([&] { s.alloc(0, 3, kNode); }), FaultCode::F001);
}

TEST(RegionStore, ExtensibleChunks) {
    RegionStore s(ExtensibleArena{64, 2});
    s.push();
    for (int i = 0; i < 3; ++i) s.alloc(0, 3, kNode);
    EXPECT_EQ(s.region(0).chunks, (std::vector<std::uint64_t>{64, 128}));
    EXPECT_EQ(s.region(0).bytes_used, 96u);
}

TEST(RegionStore, ExtensibleOversizedCell) {
    RegionStore s(ExtensibleArena{16, 2});
    s.push();
    s.alloc(0, 3, kNode);  // 32 bytes: the first chunk grows until it fits
    EXPECT_EQ(s.region(0).chunks, (std::vector<std::uint64_t>{32}));
}

TEST(RegionStore, BulkFree) {
    RegionStore s;
    s.push();
    s.push();
    for (int i = 0; i < 3; ++i) s.alloc(1, 3, kNode);
    EXPECT_EQ(s.stats().live_bytes, 96u);
    EXPECT_EQ(s.free_all(), 96u);
    EXPECT_EQ(s.free_all(), 0u);
    const auto& ev = s.stats().free_events;
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_EQ(ev[0].depth, 1u);
    EXPECT_EQ(ev[0].bytes_freed, 96u);
    EXPECT_EQ(ev[1].depth, 0u);
    EXPECT_EQ(ev[1].bytes_freed, 0u);
    EXPECT_EQ(s.stats().live_bytes, 0u);
    EXPECT_EQ(s.stats().peak_bytes, 96u);
    EXPECT_EQ(s.stats().regions_freed, s.stats().regions_opened);
}

TEST(RegionStore, ReadWriteThroughAliases) {
    RegionStore s;
    s.push();
    RegionRef cell = s.alloc(0, 1, kScalarCell);
    s.write(cell, 0, std::int64_t{12});
    RegionRef e = cell, f = cell;
    s.write(e, 0, std::int64_t{67});
    s.write(f, 0, std::int64_t{76});
    EXPECT_EQ(std::get<std::int64_t>(s.read(e, 0)), 76);
}

TEST(RegionStore, DanglingAfterFree) {
    RegionStore s;
    s.push();
    s.push();
    RegionRef r = s.alloc(1, 1, kScalarCell);
    s.free_all();
    EXPECT_EQ(fault_of([&] { s.read(r, 0); }), FaultCode::F002);
    s.push();  // same depth, new generation
    EXPECT_EQ(fault_of([&] { s.read(r, 0); }), FaultCode::F002);
    EXPECT_EQ(fault_of([&] { s.write(r, 0, std::int64_t{1}); }), FaultCode::F002);
    EXPECT_FALSE(s.is_live(r.depth, r.generation));
}

TEST(ArenaSpec, Parse) {
    EXPECT_EQ(std::get<FixedArena>(parse_arena_spec("fixed:63")).capacity_bytes, 63u);
    auto e = std::get<ExtensibleArena>(parse_arena_spec("extensible"));
    EXPECT_EQ(e.initial_chunk_bytes, 4096u);
    EXPECT_EQ(e.growth_factor, 2u);
    e = std::get<ExtensibleArena>(parse_arena_spec("extensible:64:3"));
    EXPECT_EQ(e.initial_chunk_bytes, 64u);
    EXPECT_EQ(e.growth_factor, 3u);
    for (const char* bad : {"fixed", "fixed:0", "fixed:-1", "extensible:64:1", "extensible:0:2", "extensible:64", "heap", ""}) {
        EXPECT_THROW(parse_arena_spec(bad), std::invalid_argument) << bad;
    }
}

TEST(Stats, TextAndJson) {
    RegionStore s;
    s.push();
    s.alloc(0, 3, kNode);
    s.free_all();
    const std::string text = stats_text(s.stats());
    EXPECT_NE(text.find("regions_opened"), std::string::npos);
    EXPECT_NE(text.find("free depth=0 gen=1 bytes=32"), std::string::npos);
    const std::string json = stats_json(s.stats());
    EXPECT_NE(json.find("\"free_events\""), std::string::npos);
    EXPECT_EQ(json.find('\n'), std::string::npos);
}
