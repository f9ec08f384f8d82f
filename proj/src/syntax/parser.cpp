#include <charconv>
#include <stdexcept>
#include <utility>

#include "loclang/syntax.hpp"

namespace loclang::syntax {

namespace {

struct ParseError {
    Diagnostic diagnostic;
};

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {
        end_.kind = TokenKind::End;
        if (!toks_.empty()) {
            const Span& last = toks_.back().span;
            end_.span = Span{last.file, last.line, last.col + last.len, 1};
        } else {
            end_.span = Span{"<input>", 1, 1, 1};
        }
    }

    ParseResult run() {
        ParseResult out;
        try {
            while (at(TokenKind::Record)) out.program.records.push_back(record_decl());
            while (!at(TokenKind::End)) out.program.body.push_back(statement());
            assign_node_ids(out.program);
        } catch (const ParseError& e) {
            out.program = {};
            out.diagnostics.push_back(e.diagnostic);
        }
        return out;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : end_;
    }
    const Token& previous() const { return toks_[pos_ - 1]; }
    bool at(TokenKind k) const { return peek().kind == k; }

    const Token& take() {
        const Token& t = peek();
        if (pos_ < toks_.size()) ++pos_;
        return t;
    }

    bool accept(TokenKind k) {
        if (!at(k)) return false;
        take();
        return true;
    }

    [[noreturn]] void fail(std::string_view expected) const {
        const Token& t = peek();
        std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError{{DiagCode::E002, "expected " + std::string(expected) + ", found " + found, t.span, {}}};
    }

    const Token& expect(TokenKind k) {
        if (!at(k)) fail(to_string(k));
        return take();
    }

    // Span from `first` to the last consumed token, clipped to one line.
    Span span_from(const Token& first) const {
        Span s = first.span;
        if (pos_ == 0) return s;
        const Span& last = previous().span;
        if (last.line == s.line && last.col + last.len > s.col) s.len = last.col + last.len - s.col;
        return s;
    }

    RecordDecl record_decl() {
        const Token& kw = expect(TokenKind::Record);
        RecordDecl decl;
        decl.name = expect(TokenKind::Ident).text;
        decl.span = kw.span;
        expect(TokenKind::LBrace);
        while (at(TokenKind::Ident)) {
            std::string field = take().text;
            expect(TokenKind::Colon);
            SemType type = type_expr();
            expect(TokenKind::Comma);
            decl.fields.emplace_back(std::move(field), std::move(type));
        }
        if (!at(TokenKind::RBrace)) fail("field name or '}'");
        take();
        return decl;
    }

    bool ref_prefix(RefKind& kind) {
        if (accept(TokenKind::AmpMut)) {
            kind = RefKind::Unique;
            return true;
        }
        if (accept(TokenKind::AmpLoc)) {
            kind = RefKind::Local;
            return true;
        }
        if (accept(TokenKind::Amp)) {
            kind = RefKind::Shared;
            if (accept(TokenKind::Mut)) kind = RefKind::Unique;
            else if (accept(TokenKind::Loc)) kind = RefKind::Local;
            return true;
        }
        return false;
    }

    SemType type_expr() {
        RefKind kind;
        if (ref_prefix(kind)) {
            SemType target = type_expr();
            bool nullable = accept(TokenKind::Question);
            return SemType::ref_type(kind, std::move(target), nullable);
        }
        if (!at(TokenKind::Ident)) fail("type");
        const std::string& name = take().text;
        if (name == "i32") return SemType::int_type();
        if (name == "bool") return SemType::bool_type();
        return SemType::record_type(name);
    }

    std::vector<Stmt> block_body() {
        expect(TokenKind::LBrace);
        std::vector<Stmt> body;
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::End)) fail("'}'");
            body.push_back(statement());
        }
        take();
        return body;
    }

    Stmt statement() {
        const Token& first = peek();
        switch (first.kind) {
            case TokenKind::Let: {
                take();
                BindMode mode = BindMode::Plain;
                if (accept(TokenKind::Mut)) mode = BindMode::Mut;
                else if (accept(TokenKind::Loc)) mode = BindMode::Loc;
                std::string name = expect(TokenKind::Ident).text;
                std::optional<SemType> declared;
                if (accept(TokenKind::Colon)) declared = type_expr();
                expect(TokenKind::Assign);
                Expr init = expression();
                expect(TokenKind::Semi);
                return make_let(mode, std::move(name), std::move(declared), std::move(init), span_from(first));
            }
            case TokenKind::Print: {
                take();
                Expr e = expression();
                expect(TokenKind::Semi);
                return make_print(std::move(e), span_from(first));
            }
            case TokenKind::While: {
                take();
                Expr cond = expression();
                Span span = span_from(first);
                return make_while(std::move(cond), block_body(), span);
            }
            case TokenKind::If: return if_statement();
            case TokenKind::Spawn: {
                take();
                Span span = span_from(first);
                return make_spawn(block_body(), span);
            }
            case TokenKind::LBrace: {
                Span span = first.span;
                return make_block(block_body(), span);
            }
            default: break;
        }
        Expr e = expression();
        if (accept(TokenKind::Assign)) {
            if (e.kind != Expr::Kind::PlaceRead) {
                throw ParseError{{DiagCode::E002, "expected place on the left of '='", e.span, {}}};
            }
            Expr rhs = expression();
            expect(TokenKind::Semi);
            return make_assign(std::move(e.place), std::move(rhs), span_from(first));
        }
        expect(TokenKind::Semi);
        return make_expr_stmt(std::move(e), span_from(first));
    }

    Stmt if_statement() {
        const Token& first = expect(TokenKind::If);
        Expr cond = expression();
        Span span = span_from(first);
        std::vector<Stmt> then_body = block_body();
        std::optional<std::vector<Stmt>> else_body;
        if (accept(TokenKind::Else)) {
            if (at(TokenKind::If)) {
                std::vector<Stmt> nested;
                nested.push_back(if_statement());
                else_body = std::move(nested);
            } else {
                else_body = block_body();
            }
        }
        return make_if(std::move(cond), std::move(then_body), std::move(else_body), span);
    }

    // Precedence climbing, lowest first: || && equality comparison additive multiplicative unary postfix.
    Expr expression() { return logic_or(); }

    Expr binary_level(int level) {
        static const std::vector<std::vector<std::pair<TokenKind, BinaryOp>>> levels{
            {{TokenKind::OrOr, BinaryOp::Or}},
            {{TokenKind::AndAnd, BinaryOp::And}},
            {{TokenKind::EqEq, BinaryOp::Eq}, {TokenKind::NotEq, BinaryOp::Ne}},
            {{TokenKind::Lt, BinaryOp::Lt}, {TokenKind::Le, BinaryOp::Le}, {TokenKind::Gt, BinaryOp::Gt},
             {TokenKind::Ge, BinaryOp::Ge}},
            {{TokenKind::Plus, BinaryOp::Add}, {TokenKind::Minus, BinaryOp::Sub}},
            {{TokenKind::Star, BinaryOp::Mul}},
        };
        if (level == static_cast<int>(levels.size())) return unary();
        const Token& first = peek();
        Expr lhs = binary_level(level + 1);
        while (true) {
            bool matched = false;
            for (const auto& [tok, op] : levels[level]) {
                if (at(tok)) {
                    take();
                    Expr rhs = binary_level(level + 1);
                    lhs = make_binary(op, std::move(lhs), std::move(rhs), Span{});
                    lhs.span = span_from(first);
                    matched = true;
                    break;
                }
            }
            if (!matched) return lhs;
        }
    }

    Expr logic_or() { return binary_level(0); }

    Expr require_place(Expr e, std::string_view what) {
        if (e.kind != Expr::Kind::PlaceRead) {
            throw ParseError{{DiagCode::E002, "expected place after " + std::string(what), e.span, {}}};
        }
        return e;
    }

    Expr unary() {
        const Token& first = peek();
        RefKind kind;
        if (ref_prefix(kind)) {
            Expr operand = require_place(unary(), "borrow");
            Place place = std::move(operand.place);
            place.span = span_from(first);
            return make_borrow(kind, std::move(place));
        }
        if (accept(TokenKind::Star)) {
            Expr operand = require_place(unary(), "'*'");
            operand.place.path.push_back(PathStep{PathStep::Kind::Deref, {}});
            operand.place.span = span_from(first);
            operand.span = operand.place.span;
            return operand;
        }
        if (accept(TokenKind::Minus)) {
            Expr operand = unary();
            return make_unary(UnaryOp::Neg, std::move(operand), span_from(first));
        }
        if (accept(TokenKind::Bang)) {
            Expr operand = unary();
            return make_unary(UnaryOp::Not, std::move(operand), span_from(first));
        }
        return postfix();
    }

    Expr postfix() {
        const Token& first = peek();
        Expr e = primary();
        while (at(TokenKind::Dot)) {
            take();
            std::string field = expect(TokenKind::Ident).text;
            e = require_place(std::move(e), "'.' receiver");
            e.place.path.push_back(PathStep{PathStep::Kind::Field, std::move(field)});
            e.place.span = span_from(first);
            e.span = e.place.span;
        }
        return e;
    }

    Expr primary() {
        const Token& first = peek();
        switch (first.kind) {
            case TokenKind::Int: {
                take();
                std::int64_t v = 0;
                auto [ptr, ec] = std::from_chars(first.text.data(), first.text.data() + first.text.size(), v);
                if (ec != std::errc{} || ptr != first.text.data() + first.text.size()) {
                    throw ParseError{{DiagCode::E002, "integer literal out of range", first.span, {}}};
                }
                return make_int(v, first.span);
            }
            case TokenKind::True: take(); return make_bool(true, first.span);
            case TokenKind::False: take(); return make_bool(false, first.span);
            case TokenKind::Nil: take(); return make_nil(first.span);
            case TokenKind::Ident: take(); return make_read(make_place(first.text, {}, first.span));
            case TokenKind::LParen: {
                take();
                Expr inner = expression();
                expect(TokenKind::RParen);
                inner.span = span_from(first);
                if (inner.kind == Expr::Kind::PlaceRead) inner.place.span = inner.span;
                return inner;
            }
            case TokenKind::New: {
                take();
                std::string record = expect(TokenKind::Ident).text;
                expect(TokenKind::LBrace);
                std::vector<std::pair<std::string, Expr>> inits;
                std::vector<Span> spans;
                while (at(TokenKind::Ident)) {
                    const Token& name = take();
                    expect(TokenKind::Colon);
                    Expr value = expression();
                    spans.push_back(name.span);
                    inits.emplace_back(name.text, std::move(value));
                    if (!accept(TokenKind::Comma)) break;
                }
                expect(TokenKind::RBrace);
                Expr e = make_new(std::move(record), std::move(inits), span_from(first));
                for (std::size_t i = 0; i < spans.size(); ++i) e.inits[i].span = spans[i];
                return e;
            }
            default: fail("expression");
        }
    }

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
    Token end_;
};

}  // namespace

ParseResult parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

ParseResult parse_source(std::string_view source, std::string_view file) {
    LexResult lexed = lex(source, file);
    if (!lexed.ok()) {
        ParseResult out;
        out.diagnostics = std::move(lexed.diagnostics);
        return out;
    }
    return parse(lexed.tokens);
}

}  // namespace loclang::syntax
