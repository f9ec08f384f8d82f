#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loclang/ast.hpp"
#include "loclang/diagnostic.hpp"

namespace loclang::syntax {

enum class TokenKind {
    // keywords
    Let, Mut, Loc, New, Nil, While, If, Else, Spawn, Print, Record, True, False,
    // literals and names
    Ident, Int,
    // operators and punctuation
    Amp, AmpMut, AmpLoc, AndAnd, OrOr, Bang,
    Star, Assign, EqEq, NotEq, Lt, Le, Gt, Ge, Plus, Minus,
    Dot, Semi, LBrace, RBrace, LParen, RParen, Colon, Comma, Question,
    End,  // synthesized by the parser past the last token
};

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    Span span;
};

struct LexResult {
    std::vector<Token> tokens;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return diagnostics.empty(); }
};

LexResult lex(std::string_view source, std::string_view file = "<input>");

struct ParseResult {
    Program program;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return diagnostics.empty(); }
};

ParseResult parse(const std::vector<Token>& tokens);

/// lex + parse; lexing errors stop before parsing.
ParseResult parse_source(std::string_view source, std::string_view file = "<input>");

/// Canonical source text: 4-space indentation, one statement per line.
std::string format_ast(const Program& p);
std::string format_expr(const Expr& e);
std::string format_place(const Place& p);
std::string format_type(const SemType& t);

}  // namespace loclang::syntax
