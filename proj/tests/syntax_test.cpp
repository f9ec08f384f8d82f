#include <gtest/gtest.h>

#include "loclang/syntax.hpp"
#include "test_util.hpp"

using namespace loclang;
using syntax::TokenKind;

namespace {

std::vector<TokenKind> kinds(std::string_view src) {
    std::vector<TokenKind> out;
    for (const auto& t : syntax::lex(src).tokens) out.push_back(t.kind);
    return out;
}

}  // namespace

TEST(Lexer, LocLet) {
    auto r = syntax::lex("let loc v : i32 = 12;");
    ASSERT_TRUE(r.diagnostics.empty());
    std::vector<TokenKind> want = {TokenKind::Let,   TokenKind::Loc, TokenKind::Ident, TokenKind::Colon,
                                   TokenKind::Ident, TokenKind::Assign, TokenKind::Int,   TokenKind::Semi};
    EXPECT_EQ(kinds("let loc v : i32 = 12;"), want);
    EXPECT_EQ(r.tokens[2].text, "v");
    EXPECT_EQ(r.tokens[4].text, "i32");
    EXPECT_EQ(r.tokens[6].text, "12");
    EXPECT_EQ(r.tokens[6].span.col, 19u);
    EXPECT_EQ(r.tokens[6].span.len, 2u);
}

TEST(Lexer, Empty) {
    auto r = syntax::lex("");
    EXPECT_TRUE(r.tokens.empty());
    EXPECT_TRUE(r.diagnostics.empty());
}

TEST(Lexer, UnknownCharacter) {
    auto r = syntax::lex("let @ x");
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].code, DiagCode::E001);
    EXPECT_EQ(r.diagnostics[0].span.line, 1u);
    EXPECT_EQ(r.diagnostics[0].span.col, 5u);
    EXPECT_NE(r.diagnostics[0].message.find('@'), std::string::npos);
}

TEST(Lexer, ReferenceOperators) {
    std::vector<TokenKind> want = {TokenKind::Amp, TokenKind::Ident, TokenKind::AmpMut, TokenKind::Ident,
                                   TokenKind::AmpLoc, TokenKind::Ident};
    EXPECT_EQ(kinds("&v &mut v &loc v"), want);
    // `&mutable` is a borrow of the name `mutable`
    std::vector<TokenKind> ident = {TokenKind::Amp, TokenKind::Ident};
    EXPECT_EQ(kinds("&mutable"), ident);
}

TEST(Lexer, CommentsAndLines) {
    auto r = syntax::lex("// first\n  print 1; // trailing\n");
    ASSERT_EQ(r.tokens.size(), 3u);
    EXPECT_EQ(r.tokens[0].span.line, 2u);
    EXPECT_EQ(r.tokens[0].span.col, 3u);
}

TEST(Parser, SharedReads) {
    Program p = test::parse_ok("let mut v : i32 = 12; let a = &v; let b = &v; print a; print b;");
    ASSERT_EQ(p.body.size(), 5u);
    const Stmt& s = p.body[1];
    ASSERT_EQ(s.kind, Stmt::Kind::Let);
    EXPECT_EQ(s.name, "a");
    ASSERT_EQ(s.value().kind, Expr::Kind::Borrow);
    EXPECT_EQ(s.value().ref, RefKind::Shared);
    EXPECT_EQ(s.value().place.root, "v");
    EXPECT_TRUE(s.value().place.path.empty());
    EXPECT_EQ(p.body[0].mode, BindMode::Mut);
    EXPECT_EQ(p.body[3].kind, Stmt::Kind::Print);
}

TEST(Parser, DoublyLinkedRecord) {
    Program p = test::parse_ok("record Node { val: i32, prev: &loc Node?, next: &loc Node?, }");
    ASSERT_EQ(p.records.size(), 1u);
    const RecordDecl& r = p.records[0];
    EXPECT_EQ(r.name, "Node");
    ASSERT_EQ(r.fields.size(), 3u);
    EXPECT_EQ(r.fields[0].second, SemType::int_type());
    const SemType link = SemType::ref_type(RefKind::Local, SemType::record_type("Node"), true);
    EXPECT_EQ(r.fields[1].first, "prev");
    EXPECT_EQ(r.fields[1].second, link);
    EXPECT_EQ(r.fields[2].second, link);
}

TEST(Parser, MissingOperand) {
    auto r = syntax::parse_source("let x = ;", "t.loc");
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].code, DiagCode::E002);
    EXPECT_NE(r.diagnostics[0].message.find("expected expression"), std::string::npos);
    EXPECT_EQ(r.diagnostics[0].span.col, 9u);
}

TEST(Parser, DerefPlace) {
    Program p = test::parse_ok("*e = 67;");
    ASSERT_EQ(p.body[0].kind, Stmt::Kind::Assign);
    EXPECT_EQ(p.body[0].place.root, "e");
    ASSERT_EQ(p.body[0].place.path.size(), 1u);
    EXPECT_EQ(p.body[0].place.path[0].kind, PathStep::Kind::Deref);
}

TEST(Parser, Precedence) {
    Program p = test::parse_ok("print 1 + 2 * 3 < 4 == true;");
    const Expr& e = p.body[0].value();
    ASSERT_EQ(e.binary, BinaryOp::Eq);
    const Expr& lt = e.operands[0];
    ASSERT_EQ(lt.binary, BinaryOp::Lt);
    EXPECT_EQ(lt.operands[0].binary, BinaryOp::Add);
    EXPECT_EQ(lt.operands[0].operands[1].binary, BinaryOp::Mul);
}

TEST(Parser, Deterministic) {
    auto a = syntax::parse_source(test::kDllLoc, "dll.loc");
    auto b = syntax::parse_source(test::kDllLoc, "dll.loc");
    ASSERT_TRUE(a.ok());
    EXPECT_TRUE(same_structure(a.program, b.program));
    EXPECT_EQ(syntax::format_ast(a.program), syntax::format_ast(b.program));
}

TEST(Parser, SpansInsideSource) {
    Program p = test::parse_ok(test::kDllLoc);
    for (const auto& s : p.body) {
        EXPECT_GE(s.span.line, 1u);
        EXPECT_LE(s.span.line, 24u);
        EXPECT_GE(s.span.col, 1u);
        EXPECT_GE(s.span.len, 1u);
    }
}

TEST(Format, LocLet) {
    Program p;
    p.body.push_back(make_let(BindMode::Loc, "v", SemType::int_type(), make_int(12)));
    EXPECT_EQ(syntax::format_ast(p), "let loc v : i32 = 12;\n");
}

TEST(Format, Empty) { EXPECT_EQ(syntax::format_ast(Program{}), ""); }

TEST(Format, RoundTripSources) {
    for (std::string_view src : {test::kThreeDisciplines, test::kDllLoc}) {
        Program p = test::parse_ok(src);
        const std::string text = syntax::format_ast(p);
        Program q = test::parse_ok(text);
        EXPECT_TRUE(same_structure(p, q)) << text;
        EXPECT_EQ(syntax::format_ast(q), text);
    }
}

TEST(Format, RoundTripTrickyShapes) {
    const char* src = R"(record R {
    a: i32,
    b: &loc R?,
}
let loc r = new R { b: nil, a: -(1 - 2) * 3 };
print (*r.b).a;
print !(true && false) || 1 - (2 - 3) != 4;
if r.b == nil {
    print 1;
} else if false {
    print 2;
} else {
    spawn {
        print 3;
    }
}
)";
    Program p = test::parse_ok(src);
    Program q = test::parse_ok(syntax::format_ast(p));
    EXPECT_TRUE(same_structure(p, q)) << syntax::format_ast(p);
}
