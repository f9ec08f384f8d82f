#include <array>
#include <cctype>
#include <utility>

#include "loclang/syntax.hpp"

namespace loclang::syntax {

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 13> kKeywords{{
    {"let", TokenKind::Let}, {"mut", TokenKind::Mut}, {"loc", TokenKind::Loc},
    {"new", TokenKind::New}, {"nil", TokenKind::Nil}, {"while", TokenKind::While},
    {"if", TokenKind::If}, {"else", TokenKind::Else}, {"spawn", TokenKind::Spawn},
    {"print", TokenKind::Print}, {"record", TokenKind::Record}, {"true", TokenKind::True},
    {"false", TokenKind::False},
}};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    Lexer(std::string_view src, std::string_view file) : src_(src), file_(file) {}

    LexResult run() {
        LexResult out;
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) break;
            const std::size_t start = pos_;
            const std::uint32_t line = line_, col = col_;
            TokenKind kind;
            if (!next_token(kind)) {
                std::size_t n = utf8_length(static_cast<unsigned char>(src_[start]));
                n = std::min(n, src_.size() - start);
                std::string bad(src_.substr(start, n));
                out.diagnostics.push_back(
                    {DiagCode::E001, "unknown character '" + bad + "'", Span{std::string(file_), line, col, 1}, {}});
                advance(n);
                continue;
            }
            Token tok;
            tok.kind = kind;
            tok.text = std::string(src_.substr(start, pos_ - start));
            tok.span = Span{std::string(file_), line, col, static_cast<std::uint32_t>(pos_ - start)};
            out.tokens.push_back(std::move(tok));
        }
        return out;
    }

private:
    static std::size_t utf8_length(unsigned char lead) {
        if (lead >= 0xF0) return 4;
        if (lead >= 0xE0) return 3;
        if (lead >= 0xC0) return 2;
        return 1;
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::size_t word_length(std::size_t from) const {
        std::size_t n = 0;
        while (from + n < src_.size() && ident_char(src_[from + n])) ++n;
        return n;
    }

    bool next_token(TokenKind& kind) {
        const char c = peek();
        if (ident_start(c)) {
            const std::size_t n = word_length(pos_);
            const std::string_view word = src_.substr(pos_, n);
            kind = TokenKind::Ident;
            for (const auto& [kw, k] : kKeywords)
                if (kw == word) kind = k;
            advance(n);
            return true;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t n = 0;
            while (std::isdigit(static_cast<unsigned char>(peek(n)))) ++n;
            kind = TokenKind::Int;
            advance(n);
            return true;
        }
        auto two = [&](char second, TokenKind both, TokenKind single) {
            if (peek(1) == second) {
                kind = both;
                advance(2);
            } else {
                kind = single;
                advance(1);
            }
            return true;
        };
        switch (c) {
            case '&': {
                if (peek(1) == '&') {
                    kind = TokenKind::AndAnd;
                    advance(2);
                    return true;
                }
                // `&mut` and `&loc` are single tokens when the keyword is glued to the ampersand.
                const std::string_view word = src_.substr(pos_ + 1, word_length(pos_ + 1));
                if (word == "mut" || word == "loc") {
                    kind = word == "mut" ? TokenKind::AmpMut : TokenKind::AmpLoc;
                    advance(4);
                    return true;
                }
                kind = TokenKind::Amp;
                advance();
                return true;
            }
            case '|':
                if (peek(1) != '|') return false;
                kind = TokenKind::OrOr;
                advance(2);
                return true;
            case '!': return two('=', TokenKind::NotEq, TokenKind::Bang);
            case '=': return two('=', TokenKind::EqEq, TokenKind::Assign);
            case '<': return two('=', TokenKind::Le, TokenKind::Lt);
            case '>': return two('=', TokenKind::Ge, TokenKind::Gt);
            case '*': kind = TokenKind::Star; break;
            case '+': kind = TokenKind::Plus; break;
            case '-': kind = TokenKind::Minus; break;
            case '.': kind = TokenKind::Dot; break;
            case ';': kind = TokenKind::Semi; break;
            case '{': kind = TokenKind::LBrace; break;
            case '}': kind = TokenKind::RBrace; break;
            case '(': kind = TokenKind::LParen; break;
            case ')': kind = TokenKind::RParen; break;
            case ':': kind = TokenKind::Colon; break;
            case ',': kind = TokenKind::Comma; break;
            case '?': kind = TokenKind::Question; break;
            default: return false;
        }
        advance();
        return true;
    }

    std::string_view src_;
    std::string_view file_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Let: return "'let'";
        case TokenKind::Mut: return "'mut'";
        case TokenKind::Loc: return "'loc'";
        case TokenKind::New: return "'new'";
        case TokenKind::Nil: return "'nil'";
        case TokenKind::While: return "'while'";
        case TokenKind::If: return "'if'";
        case TokenKind::Else: return "'else'";
        case TokenKind::Spawn: return "'spawn'";
        case TokenKind::Print: return "'print'";
        case TokenKind::Record: return "'record'";
        case TokenKind::True: return "'true'";
        case TokenKind::False: return "'false'";
        case TokenKind::Ident: return "identifier";
        case TokenKind::Int: return "integer";
        case TokenKind::Amp: return "'&'";
        case TokenKind::AmpMut: return "'&mut'";
        case TokenKind::AmpLoc: return "'&loc'";
        case TokenKind::AndAnd: return "'&&'";
        case TokenKind::OrOr: return "'||'";
        case TokenKind::Bang: return "'!'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Assign: return "'='";
        case TokenKind::EqEq: return "'=='";
        case TokenKind::NotEq: return "'!='";
        case TokenKind::Lt: return "'<'";
        case TokenKind::Le: return "'<='";
        case TokenKind::Gt: return "'>'";
        case TokenKind::Ge: return "'>='";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Dot: return "'.'";
        case TokenKind::Semi: return "';'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Comma: return "','";
        case TokenKind::Question: return "'?'";
        case TokenKind::End: return "end of input";
    }
    return "?";
}

LexResult lex(std::string_view source, std::string_view file) { return Lexer(source, file).run(); }

}  // namespace loclang::syntax
