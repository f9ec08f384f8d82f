#include <algorithm>
#include <set>
#include <utility>

#include "loclang/checker.hpp"

namespace loclang::checker {

std::optional<std::uint32_t> RecordInfo::field_index(const std::string& field) const {
    for (std::uint32_t i = 0; i < fields.size(); ++i)
        if (fields[i].first == field) return i;
    return std::nullopt;
}

bool ResolvedPlace::has_deref() const { return direct_length() < path.size(); }

std::size_t ResolvedPlace::direct_length() const {
    for (std::size_t i = 0; i < path.size(); ++i)
        if (path[i].kind == PathStep::Kind::Deref) return i;
    return path.size();
}

const RecordInfo* TypedProgram::record(const std::string& name) const {
    auto idx = record_index(name);
    return idx ? &records[*idx] : nullptr;
}

std::optional<std::uint32_t> TypedProgram::record_index(const std::string& name) const {
    for (std::uint32_t i = 0; i < records.size(); ++i)
        if (records[i].name == name) return i;
    return std::nullopt;
}

namespace {

bool is_error(const SemType& t) { return t.kind == SemType::Kind::Error; }

bool assignable(const SemType& target, const SemType& got) {
    if (is_error(target) || is_error(got)) return true;
    if (target.is_ref() && got.kind == SemType::Kind::Nil) return target.ref == RefKind::Local && target.nullable;
    if (target.is_ref() && got.is_ref()) {
        return target.ref == got.ref && *target.target == *got.target && (target.nullable || !got.nullable);
    }
    return target == got;
}

bool comparable(const SemType& a, const SemType& b) {
    if (is_error(a) || is_error(b)) return true;
    if (a.kind == SemType::Kind::Nil) return b.is_ref() && b.ref == RefKind::Local && b.nullable;
    if (b.kind == SemType::Kind::Nil) return comparable(b, a);
    if (a.is_ref() && b.is_ref()) return a.ref == b.ref && *a.target == *b.target;
    return a.is_scalar() && a == b;
}

struct SpawnFrame {
    NodeId node;
    RegionIndex body_depth;
};

class TypeChecker {
public:
    explicit TypeChecker(const Program& p) {
        tp_.program = p;
        assign_node_ids(tp_.program);
    }

    TypecheckResult run() {
        declare_records();
        scopes_.emplace_back();
        for (const auto& s : tp_.program.body) stmt(s);
        scopes_.pop_back();
        TypecheckResult out;
        out.diagnostics = std::move(diags_);
        if (out.diagnostics.empty()) out.typed = std::move(tp_);
        return out;
    }

private:
    void error(DiagCode code, std::string message, const Span& span) {
        diags_.push_back({code, std::move(message), span, {}});
    }

    RegionIndex depth() const { return static_cast<RegionIndex>(scopes_.size() - 1); }

    // ---- declarations -------------------------------------------------

    void declare_records() {
        std::set<std::string> names;
        for (const auto& r : tp_.program.records) {
            if (!names.insert(r.name).second) error(DiagCode::E200, "record '" + r.name + "' declared twice", r.span);
            tp_.records.push_back(RecordInfo{r.name, r.fields});
        }
        for (const auto& r : tp_.program.records) {
            std::set<std::string> fields;
            for (const auto& [name, type] : r.fields) {
                if (!fields.insert(name).second)
                    error(DiagCode::E200, "field '" + name + "' declared twice in record '" + r.name + "'", r.span);
                if (type.kind == SemType::Kind::Record) {
                    error(DiagCode::E200, "field '" + name + "' of record '" + r.name +
                                              "' must be a scalar or a reference", r.span);
                }
                validate_type(type, r.span);
            }
        }
    }

    bool validate_type(const SemType& t, const Span& span) {
        switch (t.kind) {
            case SemType::Kind::Record:
                if (!tp_.record(t.record)) {
                    error(DiagCode::E101, "unknown record '" + t.record + "'", span);
                    return false;
                }
                return true;
            case SemType::Kind::Ref:
                if (t.target->is_ref()) {
                    error(DiagCode::E200, "references to references are not supported", span);
                    return false;
                }
                if (t.nullable && t.ref != RefKind::Local) {
                    error(DiagCode::E200, "only local references may be nullable", span);
                    return false;
                }
                return validate_type(*t.target, span);
            default: return true;
        }
    }

    // ---- names --------------------------------------------------------

    std::optional<BindingId> lookup(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return found->second;
        }
        return std::nullopt;
    }

    // Records captures for enclosing spawns and returns the storage depth at this use.
    RegionIndex note_capture(BindingId b) {
        RegionIndex storage = tp_.bindings[b].depth;
        for (const auto& sp : spawns_) {
            if (tp_.bindings[b].depth < sp.body_depth) {
                auto& caps = tp_.captures[sp.node];
                if (std::find(caps.begin(), caps.end(), b) == caps.end()) caps.push_back(b);
                storage = std::max(storage, sp.body_depth);
            }
        }
        return storage;
    }

    std::optional<ResolvedPlace> resolve(const Place& place, NodeId node, UseKind kind) {
        auto b = lookup(place.root);
        if (!b) {
            error(DiagCode::E100, "unknown name '" + place.root + "'", place.span);
            return std::nullopt;
        }
        ResolvedPlace rp;
        rp.root = *b;
        rp.root_depth = note_capture(*b);
        SemType t = tp_.bindings[*b].type;
        for (const auto& step : place.path) {
            if (is_error(t)) break;
            if (step.kind == PathStep::Kind::Deref) {
                if (!t.is_ref()) {
                    error(DiagCode::E200, "cannot dereference a value of type " + to_string(t), place.span);
                    return std::nullopt;
                }
                rp.path.push_back(ResolvedStep{PathStep::Kind::Deref, 0, {}, t.ref, false});
                SemType next = *t.target;
                t = std::move(next);
                continue;
            }
            if (t.is_ref() && t.target->kind == SemType::Kind::Record) {
                rp.path.push_back(ResolvedStep{PathStep::Kind::Deref, 0, {}, t.ref, true});
                SemType next = *t.target;
                t = std::move(next);
            }
            if (t.kind != SemType::Kind::Record) {
                error(DiagCode::E200, "type " + to_string(t) + " has no field '" + step.field + "'", place.span);
                return std::nullopt;
            }
            const RecordInfo* rec = tp_.record(t.record);
            auto idx = rec ? rec->field_index(step.field) : std::nullopt;
            if (!idx) {
                error(DiagCode::E101, "record '" + t.record + "' has no field '" + step.field + "'", place.span);
                return std::nullopt;
            }
            rp.path.push_back(ResolvedStep{PathStep::Kind::Field, *idx, step.field, RefKind::Shared, false});
            t = rec->fields[*idx].second;
        }
        rp.type = t;
        UseKind use = kind;
        if (kind == UseKind::DirectWrite && rp.has_deref()) use = UseKind::WriteThrough;
        tp_.uses.push_back(Use{*b, current_, use, node, place.span});
        tp_.places[node] = rp;
        return rp;
    }

    // ---- expressions --------------------------------------------------

    SemType expr(const Expr& e, const SemType* expected, bool owner_init) {
        SemType t = expr_inner(e, expected, owner_init);
        tp_.types[e.id] = t;
        return t;
    }

    void expect_type(const Expr& e, const SemType& expected, bool owner_init) {
        SemType got = expr(e, &expected, owner_init);
        if (assignable(expected, got)) return;
        if (got.kind == SemType::Kind::Nil) {
            error(DiagCode::E200, "nil requires a nullable local reference type, expected " + to_string(expected),
                  e.span);
        } else {
            error(DiagCode::E200, "type mismatch: expected " + to_string(expected) + ", found " + to_string(got),
                  e.span);
        }
    }

    SemType expr_inner(const Expr& e, const SemType* expected, bool owner_init) {
        switch (e.kind) {
            case Expr::Kind::IntLit: return SemType::int_type();
            case Expr::Kind::BoolLit: return SemType::bool_type();
            case Expr::Kind::NilLit: return SemType::nil_type();
            case Expr::Kind::PlaceRead: {
                auto rp = resolve(e.place, e.id, UseKind::Read);
                return rp ? rp->type : SemType::error_type();
            }
            case Expr::Kind::Borrow: return borrow(e);
            case Expr::Kind::New: return new_expr(e, expected, owner_init);
            case Expr::Kind::Unary: {
                const bool neg = e.unary == UnaryOp::Neg;
                const SemType want = neg ? SemType::int_type() : SemType::bool_type();
                expect_type(e.operands[0], want, false);
                return want;
            }
            case Expr::Kind::Binary: return binary(e);
        }
        return SemType::error_type();
    }

    SemType borrow(const Expr& e) {
        auto rp = resolve(e.place, e.id, UseKind::Borrow);
        if (!rp || is_error(rp->type)) return SemType::error_type();
        const Binding& root = tp_.bindings[rp->root];
        if (rp->type.is_ref()) {
            error(DiagCode::E200, "cannot borrow a reference; references to references are not supported", e.span);
            return SemType::error_type();
        }
        if (e.ref == RefKind::Local) {
            if (root.mode != BindMode::Loc) {
                error(DiagCode::E310, "local reference to non-local owner '" + root.name + "'", e.span);
                return SemType::error_type();
            }
            if (!rp->path.empty() && rp->path.back().kind != PathStep::Kind::Deref) {
                error(DiagCode::E200, "local borrow must name a whole local object", e.span);
                return SemType::error_type();
            }
        } else {
            if (!rp->path.empty()) {
                error(DiagCode::E200, "shared and unique borrows must name a variable", e.span);
                return SemType::error_type();
            }
            if (e.ref == RefKind::Unique && root.mode == BindMode::Plain) {
                error(DiagCode::E300, root.name + " is not mutable, cannot borrow as mutable", e.span);
                return SemType::error_type();
            }
        }
        return SemType::ref_type(e.ref, rp->type, false);
    }

    SemType new_expr(const Expr& e, const SemType* expected, bool owner_init) {
        const RecordInfo* rec = tp_.record(e.record);
        if (!rec) {
            error(DiagCode::E101, "unknown record '" + e.record + "'", e.span);
            return SemType::error_type();
        }
        const RecordInfo record = *rec;
        std::optional<NewContext> ctx;
        if (expected && expected->is_ref() && expected->ref == RefKind::Local &&
            expected->target->kind == SemType::Kind::Record) {
            ctx = NewContext::LocalRef;
        } else if (owner_init && (!expected || expected->kind == SemType::Kind::Record)) {
            ctx = NewContext::Owner;
        }
        if (!ctx) {
            error(DiagCode::E315, "allocation outside local context", e.span);
        } else {
            tp_.new_context[e.id] = *ctx;
            tp_.region_of[e.id] = depth();
        }
        std::set<std::string> seen;
        for (const auto& init : e.inits) {
            auto idx = record.field_index(init.name);
            if (!idx) {
                error(DiagCode::E101, "record '" + record.name + "' has no field '" + init.name + "'", init.span);
                expr(init.value.front(), nullptr, false);
                continue;
            }
            if (!seen.insert(init.name).second) {
                error(DiagCode::E200, "field '" + init.name + "' initialized twice", init.span);
            }
            expect_type(init.value.front(), record.fields[*idx].second, false);
        }
        for (const auto& [name, type] : record.fields) {
            if (!seen.count(name)) error(DiagCode::E200, "missing field '" + name + "' in new " + record.name, e.span);
        }
        if (!ctx) return SemType::error_type();
        SemType rec_type = SemType::record_type(record.name);
        return *ctx == NewContext::Owner ? rec_type : SemType::ref_type(RefKind::Local, rec_type, false);
    }

    SemType binary(const Expr& e) {
        const Expr& lhs = e.operands[0];
        const Expr& rhs = e.operands[1];
        switch (e.binary) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
            case BinaryOp::Mul:
                expect_type(lhs, SemType::int_type(), false);
                expect_type(rhs, SemType::int_type(), false);
                return SemType::int_type();
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge:
                expect_type(lhs, SemType::int_type(), false);
                expect_type(rhs, SemType::int_type(), false);
                return SemType::bool_type();
            case BinaryOp::And:
            case BinaryOp::Or:
                expect_type(lhs, SemType::bool_type(), false);
                expect_type(rhs, SemType::bool_type(), false);
                return SemType::bool_type();
            case BinaryOp::Eq:
            case BinaryOp::Ne: {
                SemType a = expr(lhs, nullptr, false);
                SemType b = expr(rhs, nullptr, false);
                if (!comparable(a, b)) {
                    error(DiagCode::E200, "cannot compare " + to_string(a) + " with " + to_string(b), e.span);
                }
                return SemType::bool_type();
            }
        }
        return SemType::error_type();
    }

    // ---- statements ---------------------------------------------------

    StmtIndex enter(const Stmt& s) {
        const StmtIndex idx = static_cast<StmtIndex>(tp_.stmts.size());
        StmtInfo info;
        info.node = s.id;
        info.kind = s.kind;
        info.depth = depth();
        info.last = idx;
        info.loop = loops_.empty() ? std::nullopt : std::optional<StmtIndex>(loops_.back());
        info.spawn = spawn_indices_.empty() ? std::nullopt : std::optional<StmtIndex>(spawn_indices_.back());
        info.span = s.span;
        tp_.stmts.push_back(info);
        tp_.stmt_index[s.id] = idx;
        current_ = idx;
        return idx;
    }

    void block(const std::vector<Stmt>& body) {
        scopes_.emplace_back();
        for (const auto& s : body) stmt(s);
        scopes_.pop_back();
    }

    void stmt(const Stmt& s) {
        const StmtIndex idx = enter(s);
        switch (s.kind) {
            case Stmt::Kind::Let: let(s, idx); break;
            case Stmt::Kind::Assign: assign(s); break;
            case Stmt::Kind::Print: {
                SemType t = expr(s.value(), nullptr, false);
                if (t.kind == SemType::Kind::Record) {
                    error(DiagCode::E200, "cannot print a record value; print a field or a reference", s.value().span);
                }
                break;
            }
            case Stmt::Kind::ExprStmt: expr(s.value(), nullptr, false); break;
            case Stmt::Kind::While:
                condition(s.value());
                loops_.push_back(idx);
                block(s.body);
                loops_.pop_back();
                break;
            case Stmt::Kind::If:
                condition(s.value());
                block(s.body);
                if (s.has_else) block(s.else_body);
                break;
            case Stmt::Kind::Block: block(s.body); break;
            case Stmt::Kind::Spawn:
                tp_.captures[s.id];
                spawns_.push_back(SpawnFrame{s.id, depth() + 1});
                spawn_indices_.push_back(idx);
                block(s.body);
                spawn_indices_.pop_back();
                spawns_.pop_back();
                break;
        }
        tp_.stmts[idx].last = static_cast<StmtIndex>(tp_.stmts.size() - 1);
    }

    void condition(const Expr& cond) {
        SemType t = expr(cond, nullptr, false);
        if (!is_error(t) && t.kind != SemType::Kind::Bool) {
            error(DiagCode::E200, "condition must be bool, found " + to_string(t), cond.span);
        }
    }

    void let(const Stmt& s, StmtIndex idx) {
        const bool owner = s.mode == BindMode::Loc;
        SemType type;
        if (s.declared) {
            if (validate_type(*s.declared, s.span)) {
                type = *s.declared;
                expect_type(s.value(), type, owner);
            } else {
                type = SemType::error_type();
                expr(s.value(), nullptr, owner);
            }
        } else {
            type = expr(s.value(), nullptr, owner);
            if (type.kind == SemType::Kind::Nil) {
                error(DiagCode::E200, "cannot infer a type for nil; add a type annotation", s.value().span);
                type = SemType::error_type();
            }
        }
        Binding b;
        b.name = s.name;
        b.mode = s.mode;
        b.type = type;
        b.depth = depth();
        b.let_index = idx;
        b.let_node = s.id;
        b.span = s.span;
        const BindingId id = static_cast<BindingId>(tp_.bindings.size());
        tp_.bindings.push_back(std::move(b));
        tp_.let_binding[s.id] = id;
        if (owner) tp_.region_of[s.id] = depth();
        scopes_.back()[s.name] = id;
    }

    void assign(const Stmt& s) {
        // The target is resolved first so its type can guide `new` and `nil`.
        std::optional<ResolvedPlace> rp = resolve(s.place, s.id, UseKind::DirectWrite);
        if (!rp) {
            expr(s.value(), nullptr, false);
            return;
        }
        const Binding& root = tp_.bindings[rp->root];
        if (!rp->has_deref()) {
            if (root.mode == BindMode::Plain) {
                error(DiagCode::E300, root.name + " is not mutable, cannot write", s.place.span);
            }
        } else {
            for (const auto& step : rp->path) {
                if (step.kind == PathStep::Kind::Deref && step.via == RefKind::Shared) {
                    error(DiagCode::E300, root.name + " is not mutable, cannot write", s.place.span);
                    break;
                }
            }
        }
        expect_type(s.value(), rp->type, false);
    }

    TypedProgram tp_;
    std::vector<Diagnostic> diags_;
    std::vector<std::map<std::string, BindingId>> scopes_;
    std::vector<StmtIndex> loops_;
    std::vector<SpawnFrame> spawns_;
    std::vector<StmtIndex> spawn_indices_;
    StmtIndex current_ = 0;
};

}  // namespace

TypecheckResult typecheck(const Program& p) { return TypeChecker(p).run(); }

}  // namespace loclang::checker
