#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "loclang/ast.hpp"
#include "loclang/diagnostic.hpp"

namespace loclang::checker {

/// Lexical block-nesting depth; 0 is the program body.
using RegionIndex = std::uint32_t;
/// Program-order (pre-order) index of a statement.
using StmtIndex = std::uint32_t;
using BindingId = std::uint32_t;
using LoanId = std::uint32_t;

struct RecordInfo {
    std::string name;
    std::vector<std::pair<std::string, SemType>> fields;

    std::optional<std::uint32_t> field_index(const std::string& field) const;
};

struct Binding {
    std::string name;
    BindMode mode = BindMode::Plain;
    SemType type;
    RegionIndex depth = 0;
    StmtIndex let_index = 0;
    NodeId let_node = 0;
    Span span;
};

struct ResolvedStep {
    PathStep::Kind kind = PathStep::Kind::Deref;
    std::uint32_t field = 0;        // Field: index into the record declaration
    std::string name;               // Field: name
    RefKind via = RefKind::Shared;  // Deref: kind of the reference followed
    bool implicit = false;          // Deref inserted by field auto-dereference
};

/// A place after name resolution and auto-dereference.
struct ResolvedPlace {
    BindingId root = 0;
    std::vector<ResolvedStep> path;
    SemType type;
    /// Storage depth of the root at this use site (spawn bodies hold copies of captures).
    RegionIndex root_depth = 0;

    bool has_deref() const;
    /// Number of leading steps before the first dereference.
    std::size_t direct_length() const;
};

struct StmtInfo {
    NodeId node = 0;
    Stmt::Kind kind = Stmt::Kind::ExprStmt;
    RegionIndex depth = 0;
    StmtIndex last = 0;                // last statement index in this statement's subtree
    std::optional<StmtIndex> loop;     // innermost enclosing while
    std::optional<StmtIndex> spawn;    // innermost enclosing spawn
    Span span;
};

enum class UseKind { Read, WriteThrough, DirectWrite, Borrow };

/// One syntactic occurrence of a binding.
struct Use {
    BindingId binding = 0;
    StmtIndex at = 0;
    UseKind kind = UseKind::Read;
    NodeId node = 0;  // the PlaceRead/Borrow expression or Assign statement
    Span span;
};

/// How a `new` expression was typed.
enum class NewContext { Owner, LocalRef };

struct TypedProgram {
    Program program;
    std::vector<RecordInfo> records;
    std::vector<Binding> bindings;
    std::vector<StmtInfo> stmts;  // indexed by StmtIndex
    std::vector<Use> uses;        // in program order

    std::unordered_map<NodeId, SemType> types;             // every Expr
    std::unordered_map<NodeId, ResolvedPlace> places;      // PlaceRead, Borrow, Assign
    std::unordered_map<NodeId, BindingId> let_binding;     // Let -> binding
    std::unordered_map<NodeId, StmtIndex> stmt_index;      // Stmt -> index
    std::unordered_map<NodeId, RegionIndex> region_of;     // Let(Loc), New -> depth
    std::unordered_map<NodeId, NewContext> new_context;    // New
    std::unordered_map<NodeId, std::vector<BindingId>> captures;  // Spawn -> free bindings

    const RecordInfo* record(const std::string& name) const;
    std::optional<std::uint32_t> record_index(const std::string& name) const;
};

struct TypecheckResult {
    std::optional<TypedProgram> typed;  // present iff diagnostics is empty
    std::vector<Diagnostic> diagnostics;
};

TypecheckResult typecheck(const Program& p);

struct LiveRange {
    StmtIndex start = 0;
    StmtIndex end = 0;
};

using Liveness = std::vector<LiveRange>;  // indexed by BindingId

Liveness compute_liveness(const TypedProgram& tp);

struct Loan {
    LoanId id = 0;
    RefKind kind = RefKind::Shared;
    BindingId root = 0;
    std::vector<ResolvedStep> path;
    LiveRange range;
    std::vector<BindingId> holders;
    NodeId node = 0;  // the Borrow expression
    StmtIndex created = 0;
    Span span;
};

/// Loans with holders and live ranges, in creation order.
std::vector<Loan> collect_loans(const TypedProgram& tp, const Liveness& live);

/// True when one resolved place is a prefix of the other.
bool places_overlap(BindingId root_a, const std::vector<ResolvedStep>& a, BindingId root_b,
                    const std::vector<ResolvedStep>& b);

std::vector<Diagnostic> check_loans(const TypedProgram& tp, const Liveness& live);
std::vector<Diagnostic> check_regions(const TypedProgram& tp, const Liveness& live);
std::vector<Diagnostic> check_threads(const TypedProgram& tp);

struct CheckResult {
    std::optional<TypedProgram> typed;  // present iff the program typechecked
    std::vector<Diagnostic> diagnostics;
    bool accepted() const { return diagnostics.empty(); }
};

/// typecheck -> liveness -> loans -> regions -> threads. Diagnostics are sorted by span.
CheckResult check_program(const Program& p);

}  // namespace loclang::checker
