#include <sstream>

#include "loclang/syntax.hpp"

namespace loclang::syntax {

namespace {

int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Or: return 1;
        case BinaryOp::And: return 2;
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 3;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return 4;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 5;
        case BinaryOp::Mul: return 6;
    }
    return 0;
}

constexpr int kUnaryPrecedence = 7;

int precedence(const Expr& e) {
    if (e.kind == Expr::Kind::Binary) return precedence(e.binary);
    if (e.kind == Expr::Kind::Unary || e.kind == Expr::Kind::Borrow) return kUnaryPrecedence;
    if (e.kind == Expr::Kind::PlaceRead && !e.place.path.empty() &&
        e.place.path.back().kind == PathStep::Kind::Deref)
        return kUnaryPrecedence;
    return kUnaryPrecedence + 1;
}

std::string place_prefix(const Place& p, std::size_t n) {
    if (n == 0) return p.root;
    const PathStep& step = p.path[n - 1];
    std::string inner = place_prefix(p, n - 1);
    if (step.kind == PathStep::Kind::Deref) return "*" + inner;
    if (n >= 2 && p.path[n - 2].kind == PathStep::Kind::Deref) return "(" + inner + ")." + step.field;
    return inner + "." + step.field;
}

std::string wrap(const Expr& e, int min_prec) {
    std::string s = format_expr(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

class Formatter {
public:
    std::string run(const Program& p) {
        for (const auto& r : p.records) {
            out_ << "record " << r.name << " {\n";
            for (const auto& [name, type] : r.fields) out_ << "    " << name << ": " << format_type(type) << ",\n";
            out_ << "}\n";
        }
        for (const auto& s : p.body) stmt(s, 0);
        return out_.str();
    }

private:
    void indent(int level) {
        for (int i = 0; i < level; ++i) out_ << "    ";
    }

    void block(const std::vector<Stmt>& body, int level) {
        out_ << "{\n";
        for (const auto& s : body) stmt(s, level + 1);
        indent(level);
        out_ << "}";
    }

    void stmt(const Stmt& s, int level) {
        indent(level);
        switch (s.kind) {
            case Stmt::Kind::Let:
                out_ << "let ";
                if (s.mode == BindMode::Mut) out_ << "mut ";
                if (s.mode == BindMode::Loc) out_ << "loc ";
                out_ << s.name;
                if (s.declared) out_ << " : " << format_type(*s.declared);
                out_ << " = " << format_expr(s.value()) << ";\n";
                break;
            case Stmt::Kind::Assign:
                out_ << format_place(s.place) << " = " << format_expr(s.value()) << ";\n";
                break;
            case Stmt::Kind::Print: out_ << "print " << format_expr(s.value()) << ";\n"; break;
            case Stmt::Kind::ExprStmt: out_ << format_expr(s.value()) << ";\n"; break;
            case Stmt::Kind::While:
                out_ << "while " << format_expr(s.value()) << " ";
                block(s.body, level);
                out_ << "\n";
                break;
            case Stmt::Kind::If:
                out_ << "if " << format_expr(s.value()) << " ";
                block(s.body, level);
                if (s.has_else) {
                    out_ << " else ";
                    block(s.else_body, level);
                }
                out_ << "\n";
                break;
            case Stmt::Kind::Block:
                block(s.body, level);
                out_ << "\n";
                break;
            case Stmt::Kind::Spawn:
                out_ << "spawn ";
                block(s.body, level);
                out_ << "\n";
                break;
        }
    }

    std::ostringstream out_;
};

}  // namespace

std::string format_place(const Place& p) { return place_prefix(p, p.path.size()); }

std::string format_type(const SemType& t) { return to_string(t); }

std::string format_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::IntLit: return std::to_string(e.int_value);
        case Expr::Kind::BoolLit: return e.bool_value ? "true" : "false";
        case Expr::Kind::NilLit: return "nil";
        case Expr::Kind::PlaceRead: return format_place(e.place);
        case Expr::Kind::Borrow: {
            const char* prefix = e.ref == RefKind::Shared ? "&" : e.ref == RefKind::Unique ? "&mut " : "&loc ";
            return prefix + format_place(e.place);
        }
        case Expr::Kind::New: {
            std::string s = "new " + e.record + " {";
            for (std::size_t i = 0; i < e.inits.size(); ++i) {
                s += (i == 0 ? " " : ", ") + e.inits[i].name + ": " + format_expr(e.inits[i].value.front());
            }
            return s + (e.inits.empty() ? "}" : " }");
        }
        case Expr::Kind::Unary:
            return std::string(to_string(e.unary)) + wrap(e.operands[0], kUnaryPrecedence);
        case Expr::Kind::Binary: {
            const int p = precedence(e.binary);
            return wrap(e.operands[0], p) + " " + std::string(to_string(e.binary)) + " " +
                   wrap(e.operands[1], p + 1);
        }
    }
    return "";
}

std::string format_ast(const Program& p) { return Formatter().run(p); }

}  // namespace loclang::syntax
