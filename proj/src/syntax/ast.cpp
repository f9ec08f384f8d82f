#include "loclang/ast.hpp"

#include <utility>

namespace loclang {

std::string_view to_string(RefKind kind) {
    switch (kind) {
        case RefKind::Shared: return "shared";
        case RefKind::Unique: return "unique";
        case RefKind::Local: return "local";
    }
    return "?";
}

std::string_view to_string(BindMode mode) {
    switch (mode) {
        case BindMode::Plain: return "plain";
        case BindMode::Mut: return "mut";
        case BindMode::Loc: return "loc";
    }
    return "?";
}

std::string_view to_string(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Not: return "!";
    }
    return "?";
}

std::string_view to_string(BinaryOp op) {
    switch (op) {
        case BinaryOp::Mul: return "*";
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::And: return "&&";
        case BinaryOp::Or: return "||";
    }
    return "?";
}

SemType SemType::record_type(std::string name) {
    SemType t = with_kind(Kind::Record);
    t.record = std::move(name);
    return t;
}

SemType SemType::ref_type(RefKind kind, SemType target, bool nullable) {
    SemType t = with_kind(Kind::Ref);
    t.ref = kind;
    t.nullable = nullable;
    t.target = std::make_shared<const SemType>(std::move(target));
    return t;
}

bool operator==(const SemType& a, const SemType& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case SemType::Kind::Record: return a.record == b.record;
        case SemType::Kind::Ref: return a.ref == b.ref && a.nullable == b.nullable && *a.target == *b.target;
        default: return true;
    }
}

std::string to_string(const SemType& t) {
    switch (t.kind) {
        case SemType::Kind::Int: return "i32";
        case SemType::Kind::Bool: return "bool";
        case SemType::Kind::Record: return t.record;
        case SemType::Kind::Nil: return "nil";
        case SemType::Kind::Error: return "<error>";
        case SemType::Kind::Ref: {
            std::string prefix = t.ref == RefKind::Shared ? "&" : t.ref == RefKind::Unique ? "&mut " : "&loc ";
            return prefix + to_string(*t.target) + (t.nullable ? "?" : "");
        }
    }
    return "?";
}

Place make_place(std::string root, std::vector<PathStep> path, Span span) {
    return Place{std::move(root), std::move(path), std::move(span)};
}

Expr make_int(std::int64_t v, Span span) {
    Expr e;
    e.kind = Expr::Kind::IntLit;
    e.int_value = v;
    e.span = std::move(span);
    return e;
}

Expr make_bool(bool v, Span span) {
    Expr e;
    e.kind = Expr::Kind::BoolLit;
    e.bool_value = v;
    e.span = std::move(span);
    return e;
}

Expr make_nil(Span span) {
    Expr e;
    e.kind = Expr::Kind::NilLit;
    e.span = std::move(span);
    return e;
}

Expr make_read(Place place) {
    Expr e;
    e.kind = Expr::Kind::PlaceRead;
    e.span = place.span;
    e.place = std::move(place);
    return e;
}

Expr make_borrow(RefKind kind, Place place) {
    Expr e;
    e.kind = Expr::Kind::Borrow;
    e.ref = kind;
    e.span = place.span;
    e.place = std::move(place);
    return e;
}

Expr make_new(std::string record, std::vector<std::pair<std::string, Expr>> inits, Span span) {
    Expr e;
    e.kind = Expr::Kind::New;
    e.record = std::move(record);
    e.span = std::move(span);
    for (auto& [name, value] : inits) {
        FieldInit fi;
        fi.name = std::move(name);
        fi.span = value.span;
        fi.value.push_back(std::move(value));
        e.inits.push_back(std::move(fi));
    }
    return e;
}

Expr make_unary(UnaryOp op, Expr operand, Span span) {
    Expr e;
    e.kind = Expr::Kind::Unary;
    e.unary = op;
    e.span = std::move(span);
    e.operands.push_back(std::move(operand));
    return e;
}

Expr make_binary(BinaryOp op, Expr lhs, Expr rhs, Span span) {
    Expr e;
    e.kind = Expr::Kind::Binary;
    e.binary = op;
    e.span = std::move(span);
    e.operands.push_back(std::move(lhs));
    e.operands.push_back(std::move(rhs));
    return e;
}

Stmt make_let(BindMode mode, std::string name, std::optional<SemType> type, Expr init, Span span) {
    Stmt s;
    s.kind = Stmt::Kind::Let;
    s.mode = mode;
    s.name = std::move(name);
    s.declared = std::move(type);
    s.expr.push_back(std::move(init));
    s.span = std::move(span);
    return s;
}

Stmt make_assign(Place place, Expr rhs, Span span) {
    Stmt s;
    s.kind = Stmt::Kind::Assign;
    s.place = std::move(place);
    s.expr.push_back(std::move(rhs));
    s.span = std::move(span);
    return s;
}

Stmt make_print(Expr e, Span span) {
    Stmt s;
    s.kind = Stmt::Kind::Print;
    s.expr.push_back(std::move(e));
    s.span = std::move(span);
    return s;
}

Stmt make_while(Expr cond, std::vector<Stmt> body, Span span) {
    Stmt s;
    s.kind = Stmt::Kind::While;
    s.expr.push_back(std::move(cond));
    s.body = std::move(body);
    s.span = std::move(span);
    return s;
}

Stmt make_if(Expr cond, std::vector<Stmt> then_body, std::optional<std::vector<Stmt>> else_body, Span span) {
    Stmt s;
    s.kind = Stmt::Kind::If;
    s.expr.push_back(std::move(cond));
    s.body = std::move(then_body);
    if (else_body) {
        s.has_else = true;
        s.else_body = std::move(*else_body);
    }
    s.span = std::move(span);
    return s;
}

Stmt make_block(std::vector<Stmt> body, Span span) {
    Stmt s;
    s.kind = Stmt::Kind::Block;
    s.body = std::move(body);
    s.span = std::move(span);
    return s;
}

Stmt make_spawn(std::vector<Stmt> body, Span span) {
    Stmt s;
    s.kind = Stmt::Kind::Spawn;
    s.body = std::move(body);
    s.span = std::move(span);
    return s;
}

Stmt make_expr_stmt(Expr e, Span span) {
    Stmt s;
    s.kind = Stmt::Kind::ExprStmt;
    s.expr.push_back(std::move(e));
    s.span = std::move(span);
    return s;
}

namespace {

bool same_place(const Place& a, const Place& b) { return a.root == b.root && a.path == b.path; }

template <typename T>
bool same_list(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_structure(a[i], b[i])) return false;
    return true;
}

NodeId number(Expr& e, NodeId next) {
    e.id = next++;
    for (auto& fi : e.inits)
        for (auto& v : fi.value) next = number(v, next);
    for (auto& op : e.operands) next = number(op, next);
    return next;
}

NodeId number(Stmt& s, NodeId next) {
    s.id = next++;
    for (auto& e : s.expr) next = number(e, next);
    for (auto& b : s.body) next = number(b, next);
    for (auto& b : s.else_body) next = number(b, next);
    return next;
}

}  // namespace

bool same_structure(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::IntLit: return a.int_value == b.int_value;
        case Expr::Kind::BoolLit: return a.bool_value == b.bool_value;
        case Expr::Kind::NilLit: return true;
        case Expr::Kind::PlaceRead: return same_place(a.place, b.place);
        case Expr::Kind::Borrow: return a.ref == b.ref && same_place(a.place, b.place);
        case Expr::Kind::New: {
            if (a.record != b.record || a.inits.size() != b.inits.size()) return false;
            for (std::size_t i = 0; i < a.inits.size(); ++i) {
                if (a.inits[i].name != b.inits[i].name) return false;
                if (!same_list(a.inits[i].value, b.inits[i].value)) return false;
            }
            return true;
        }
        case Expr::Kind::Unary: return a.unary == b.unary && same_list(a.operands, b.operands);
        case Expr::Kind::Binary: return a.binary == b.binary && same_list(a.operands, b.operands);
    }
    return false;
}

bool same_structure(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind) return false;
    if (!same_list(a.expr, b.expr) || !same_list(a.body, b.body)) return false;
    switch (a.kind) {
        case Stmt::Kind::Let:
            return a.mode == b.mode && a.name == b.name && a.declared == b.declared;
        case Stmt::Kind::Assign: return same_place(a.place, b.place);
        case Stmt::Kind::If: return a.has_else == b.has_else && same_list(a.else_body, b.else_body);
        default: return true;
    }
}

bool same_structure(const Program& a, const Program& b) {
    if (a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        if (a.records[i].name != b.records[i].name || a.records[i].fields != b.records[i].fields) return false;
    }
    return same_list(a.body, b.body);
}

NodeId assign_node_ids(Program& p) {
    NodeId next = 1;
    for (auto& s : p.body) next = number(s, next);
    return next;
}

}  // namespace loclang
