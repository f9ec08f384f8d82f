#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace loclang;
using Lines = std::vector<std::string>;

TEST(Interp, ThreeDisciplines) {
    auto r = test::run(test::kThreeDisciplines);
    EXPECT_FALSE(r.fault);
    EXPECT_EQ(r.output, (Lines{"12", "12", "45", "76", "76"}));
}

TEST(Interp, DoublyLinkedList) {
    auto r = test::run(test::kDllLoc);
    EXPECT_FALSE(r.fault);
    EXPECT_EQ(r.output, (Lines{"1", "2", "3", "3", "2", "1"}));
    EXPECT_EQ(r.stats.live_bytes, 0u);
    EXPECT_EQ(r.stats.regions_freed, r.stats.regions_opened);
    EXPECT_EQ(r.stats.free_events.size(), r.stats.regions_opened);
}

TEST(Interp, FixedArenaOverflow) {
    auto r = test::run(test::kDllLoc, regions::FixedArena{63});
    ASSERT_TRUE(r.fault);
    EXPECT_EQ(r.fault->code, regions::FaultCode::F001);
    EXPECT_EQ(r.fault->span.line, 8u);
    EXPECT_TRUE(r.output.empty());
    EXPECT_EQ(r.stats.live_bytes, 0u);
}

TEST(Interp, StrategyIndependence) {
    auto a = test::run(test::kDllLoc, regions::FixedArena{4096});
    auto b = test::run(test::kDllLoc, regions::ExtensibleArena{});
    auto c = test::run(test::kDllLoc, regions::ExtensibleArena{16, 3});
    EXPECT_EQ(a.output, b.output);
    EXPECT_EQ(a.output, c.output);
    EXPECT_EQ(a.stats.free_events, b.stats.free_events);
}

TEST(Interp, UncheckedEscapeDangles) {
    const char* src = "let loc a : i32 = 1;\nlet mut r : &loc i32 = &loc a;\n{\n    let loc b : i32 = 2;\n    r = &loc b;\n}\nprint *r;\n";
    interp::RunResult checked = interp::run_program(test::parse_ok(src), regions::ExtensibleArena{}, interp::Mode::Checked);
    ASSERT_FALSE(checked.exec);
    EXPECT_EQ(checked.diagnostics.front().code, DiagCode::E311);
    auto r = test::run(src, regions::ExtensibleArena{}, interp::Mode::Unchecked);
    ASSERT_TRUE(r.fault);
    EXPECT_EQ(r.fault->code, regions::FaultCode::F002);
    EXPECT_EQ(r.fault->span.line, 7u);
    EXPECT_EQ(interp::render_fault(*r.fault), "fault[F002]: dangling region access at t.loc:7:7");
}

TEST(Interp, OutputPrefixOnFault) {
    const char* src = "record N { v: i32, next: &loc N?, }\nlet loc n = new N { v: 1, next: nil };\nprint n.v;\nlet r : &loc N? = n.next;\nprint r.v;\nprint 5;\n";
    auto r = test::run(src);
    ASSERT_TRUE(r.fault);
    EXPECT_EQ(r.fault->code, regions::FaultCode::F003);
    EXPECT_EQ(r.output, (Lines{"1"}));
    EXPECT_EQ(r.stats.live_bytes, 0u);
}

TEST(Interp, EvalPlaceDeref) {
    auto tp = test::typed("let loc v : i32 = 12; let e = &loc v; print *e;");
    interp::Interpreter in(tp, regions::ExtensibleArena{});
    auto r = in.run();
    EXPECT_EQ(r.output, (Lines{"12"}));
}

TEST(Interp, EvalPlaceChain) {
    auto r = test::run(R"(record Node { val: i32, prev: &loc Node?, next: &loc Node?, }
let loc head = new Node { val: 1, prev: nil, next: nil };
let loc tail = new Node { val: 2, prev: nil, next: nil };
head.next = &loc tail;
tail.prev = &loc head;
head.next.prev.val = 9;
print head.val;
print head.next.prev;
print &loc head;
)");
    EXPECT_EQ(r.output, (Lines{"9", "&loc Node@0.0", "&loc Node@0.0"}));
}

TEST(Interp, PrintForms) {
    auto r = test::run("let x = true; print x; print !x; print 7 - 10; print 1 < 2 && 2 < 1;");
    EXPECT_EQ(r.output, (Lines{"true", "false", "-3", "false"}));
}

TEST(Interp, WrappingArithmetic) {
    auto r = test::run("let big = 9223372036854775807; print big + 1; print -big - 2; print big * 2;");
    EXPECT_EQ(r.output, (Lines{"-9223372036854775808", "9223372036854775807", "-2"}));
}

TEST(Interp, Loops) {
    auto r = test::run("let mut i = 0; let mut s = 0; while i < 5 { s = s + i; i = i + 1; } print s;");
    EXPECT_EQ(r.output, (Lines{"10"}));
    EXPECT_EQ(r.stats.regions_opened, 6u);
}

TEST(Interp, SpawnRunsInline) {
    auto r = test::run("let mut x = 1; print 0; spawn { x = x + 1; print x; } print 3;");
    EXPECT_EQ(r.output, (Lines{"0", "2", "3"}));
}

TEST(Interp, SharedAndUniqueReferences) {
    auto r = test::run("let mut v = 1; let c = &mut v; *c = *c + 4; print c; print *c; let a = &v; print a;");
    EXPECT_EQ(r.output, (Lines{"5", "5", "5"}));
}

TEST(Interp, Determinism) {
    auto a = test::run(test::kDllLoc);
    auto b = test::run(test::kDllLoc);
    EXPECT_EQ(a.output, b.output);
    EXPECT_EQ(regions::stats_text(a.stats), regions::stats_text(b.stats));
}
