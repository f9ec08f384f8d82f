#pragma once

#include <string>
#include <vector>

#include "loclang/checker.hpp"
#include "loclang/interp.hpp"
#include "loclang/syntax.hpp"

namespace loclang::test {

inline Program parse_ok(std::string_view src, std::string_view file = "t.loc") {
    syntax::ParseResult r = syntax::parse_source(src, file);
    if (!r.ok()) throw std::runtime_error("parse failed: " + render_text(r.diagnostics.front()));
    return r.program;
}

inline std::vector<Diagnostic> check(std::string_view src) {
    return checker::check_program(parse_ok(src)).diagnostics;
}

inline std::vector<std::string> codes(std::string_view src) {
    std::vector<std::string> out;
    for (const auto& d : check(src)) out.emplace_back(to_string(d.code));
    return out;
}

inline checker::TypedProgram typed(std::string_view src) {
    checker::TypecheckResult r = checker::typecheck(parse_ok(src));
    if (!r.typed) throw std::runtime_error("typecheck failed: " + render_text(r.diagnostics.front()));
    return *r.typed;
}

inline interp::ExecResult run(std::string_view src, regions::ArenaStrategy s = regions::ExtensibleArena{},
                              interp::Mode mode = interp::Mode::Checked) {
    interp::RunResult r = interp::run_program(parse_ok(src), s, mode);
    if (!r.exec) throw std::runtime_error("rejected: " + render_text(r.diagnostics.front()));
    return *r.exec;
}

// Shared reads, a unique write and local aliases in sequence; the second `let loc v` shadows the first binding.
inline constexpr std::string_view kThreeDisciplines = R"(let mut v : i32 = 12;

let a = &v;
let b = &v;
print a;
print b;

let c = &mut v;
*c = 45;
print c;

let loc v : i32 = 12;

let e = &loc v;
let f = &loc v;
*e = 67;
*f = 76;
print e;
print f;
)";

inline constexpr std::string_view kDllLoc = R"(record Node {
    val: i32,
    prev: &loc Node?,
    next: &loc Node?,
}

let loc a = new Node { val: 1, prev: nil, next: nil };
let loc b = new Node { val: 2, prev: nil, next: nil };
let loc c = new Node { val: 3, prev: nil, next: nil };
a.next = &loc b;
b.prev = &loc a;
b.next = &loc c;
c.prev = &loc b;

let mut cur : &loc Node? = &loc a;
while cur != nil {
    print cur.val;
    cur = cur.next;
}
cur = &loc c;
while cur != nil {
    print cur.val;
    cur = cur.prev;
}
)";

}  // namespace loclang::test
