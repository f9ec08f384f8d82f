#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loclang/diagnostic.hpp"

namespace loclang {

/// The three reference disciplines.
enum class RefKind { Shared, Unique, Local };

enum class BindMode { Plain, Mut, Loc };

std::string_view to_string(RefKind kind);
std::string_view to_string(BindMode mode);

/// Identifies an Expr or Stmt node; assigned in source order by the parser.
using NodeId = std::uint32_t;

/// Semantic type. `Error` and `Nil` never appear in source; the checker uses
/// them for recovery and for the type of the `nil` literal.
struct SemType {
    enum class Kind { Int, Bool, Record, Ref, Nil, Error };

    Kind kind = Kind::Int;
    std::string record;                     // Kind::Record
    RefKind ref = RefKind::Shared;          // Kind::Ref
    bool nullable = false;                  // Kind::Ref
    std::shared_ptr<const SemType> target;  // Kind::Ref

    static SemType with_kind(Kind k) {
        SemType t;
        t.kind = k;
        return t;
    }
    static SemType int_type() { return {}; }
    static SemType bool_type() { return with_kind(Kind::Bool); }
    static SemType nil_type() { return with_kind(Kind::Nil); }
    static SemType error_type() { return with_kind(Kind::Error); }
    static SemType record_type(std::string name);
    static SemType ref_type(RefKind kind, SemType target, bool nullable = false);

    bool is_ref() const { return kind == Kind::Ref; }
    bool is_scalar() const { return kind == Kind::Int || kind == Kind::Bool; }
    bool is_error() const { return kind == Kind::Error; }
    const SemType& pointee() const { return *target; }
};

bool operator==(const SemType& a, const SemType& b);
std::string to_string(const SemType& t);

struct PathStep {
    enum class Kind { Deref, Field };
    Kind kind = Kind::Deref;
    std::string field;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// `*e`, `head.next.prev`, `(*p).val`: a root binding followed by projections.
struct Place {
    std::string root;
    std::vector<PathStep> path;
    Span span;
};

enum class UnaryOp { Neg, Not };
enum class BinaryOp { Mul, Add, Sub, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);

struct Expr;

struct FieldInit {
    std::string name;
    Span span;
    std::vector<Expr> value;  // exactly one element
};

struct Expr {
    enum class Kind { IntLit, BoolLit, NilLit, PlaceRead, Borrow, New, Unary, Binary };

    Kind kind = Kind::IntLit;
    NodeId id = 0;
    Span span;

    std::int64_t int_value = 0;
    bool bool_value = false;
    Place place;                    // PlaceRead, Borrow
    RefKind ref = RefKind::Shared;  // Borrow
    std::string record;             // New
    std::vector<FieldInit> inits;   // New
    UnaryOp unary = UnaryOp::Neg;
    BinaryOp binary = BinaryOp::Add;
    std::vector<Expr> operands;     // Unary: 1, Binary: 2
};

struct Stmt {
    enum class Kind { Let, Assign, Print, While, If, Block, Spawn, ExprStmt };

    Kind kind = Kind::ExprStmt;
    NodeId id = 0;
    Span span;

    BindMode mode = BindMode::Plain;     // Let
    std::string name;                    // Let
    std::optional<SemType> declared;     // Let
    Place place;                         // Assign target
    std::vector<Expr> expr;              // Let init, Assign rhs, Print, While/If cond, ExprStmt (one element)
    std::vector<Stmt> body;              // While, If then, Block, Spawn
    std::vector<Stmt> else_body;         // If
    bool has_else = false;

    const Expr& value() const { return expr.front(); }
};

struct RecordDecl {
    std::string name;
    Span span;
    std::vector<std::pair<std::string, SemType>> fields;
};

struct Program {
    std::vector<RecordDecl> records;
    std::vector<Stmt> body;
};

// Factories used by the parser, the generator and tests.
Expr make_int(std::int64_t v, Span span = {});
Expr make_bool(bool v, Span span = {});
Expr make_nil(Span span = {});
Expr make_read(Place place);
Expr make_borrow(RefKind kind, Place place);
Expr make_new(std::string record, std::vector<std::pair<std::string, Expr>> inits, Span span = {});
Expr make_unary(UnaryOp op, Expr operand, Span span = {});
Expr make_binary(BinaryOp op, Expr lhs, Expr rhs, Span span = {});
Place make_place(std::string root, std::vector<PathStep> path = {}, Span span = {});

Stmt make_let(BindMode mode, std::string name, std::optional<SemType> type, Expr init, Span span = {});
Stmt make_assign(Place place, Expr rhs, Span span = {});
Stmt make_print(Expr e, Span span = {});
Stmt make_while(Expr cond, std::vector<Stmt> body, Span span = {});
Stmt make_if(Expr cond, std::vector<Stmt> then_body, std::optional<std::vector<Stmt>> else_body, Span span = {});
Stmt make_block(std::vector<Stmt> body, Span span = {});
Stmt make_spawn(std::vector<Stmt> body, Span span = {});
Stmt make_expr_stmt(Expr e, Span span = {});

/// Structural equality: ignores spans and node ids.
bool same_structure(const Program& a, const Program& b);
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Stmt& a, const Stmt& b);

/// Renumbers every Expr and Stmt in pre-order starting at 1. Returns the next free id.
NodeId assign_node_ids(Program& p);

}  // namespace loclang
