#include <algorithm>
#include <climits>

#include "loclang/checker.hpp"

namespace loclang::checker {

namespace {

/// Bounds on the region depth a reference value may point into.
struct Interval {
    int lo = INT_MAX;
    int hi = -1;

    bool empty() const { return lo > hi; }
    static Interval exactly(int d) { return {d, d}; }

    bool join(const Interval& o) {
        if (o.empty()) return false;
        if (empty()) {
            *this = o;
            return true;
        }
        const Interval before = *this;
        lo = std::min(lo, o.lo);
        hi = std::max(hi, o.hi);
        return before.lo != lo || before.hi != hi;
    }
};

// Either a cell (interval = the cell's region depth) or a storage slot
// holding a value (interval = where that value points).
struct Cursor {
    bool cell = false;
    Interval iv;
};

class RegionChecker {
public:
    explicit RegionChecker(const TypedProgram& tp) : tp_(tp), intervals_(tp.bindings.size()) {}

    std::vector<Diagnostic> run() {
        emit_ = false;
        do {
            changed_ = false;
            for (const auto& s : tp_.program.body) stmt(s);
        } while (changed_);
        emit_ = true;
        for (const auto& s : tp_.program.body) stmt(s);
        return std::move(out_);
    }

private:
    Cursor root_cursor(BindingId b) const {
        const Binding& bind = tp_.bindings[b];
        if (bind.mode == BindMode::Loc && bind.type.kind == SemType::Kind::Record) {
            return {true, Interval::exactly(static_cast<int>(bind.depth))};
        }
        return {false, intervals_[b]};
    }

    Cursor walk(const ResolvedPlace& rp, std::size_t steps) const {
        Cursor c = root_cursor(rp.root);
        for (std::size_t i = 0; i < steps; ++i) {
            const ResolvedStep& step = rp.path[i];
            if (step.kind == PathStep::Kind::Deref) {
                c = Cursor{true, c.cell ? Interval{} : c.iv};
            } else {
                Interval field_value;
                if (!c.iv.empty()) field_value = Interval{0, c.iv.hi};
                c = Cursor{false, field_value};
            }
        }
        return c;
    }

    Interval value(const Expr& e) const {
        switch (e.kind) {
            case Expr::Kind::Borrow: {
                const ResolvedPlace& rp = tp_.places.at(e.id);
                if (rp.path.empty()) {
                    const Binding& b = tp_.bindings[rp.root];
                    const bool owner_cell = e.ref == RefKind::Local;
                    return Interval::exactly(static_cast<int>(owner_cell ? b.depth : rp.root_depth));
                }
                return walk(rp, rp.path.size()).iv;
            }
            case Expr::Kind::PlaceRead: {
                const ResolvedPlace& rp = tp_.places.at(e.id);
                if (!rp.type.is_ref()) return {};
                return walk(rp, rp.path.size()).iv;
            }
            case Expr::Kind::New: {
                auto ctx = tp_.new_context.find(e.id);
                if (ctx == tp_.new_context.end() || ctx->second != NewContext::LocalRef) return {};
                return Interval::exactly(static_cast<int>(tp_.region_of.at(e.id)));
            }
            default: return {};
        }
    }

    void escape(const Expr& rhs, const Interval& v, int storage) {
        if (!emit_) return;
        const SemType& t = tp_.types.at(rhs.id);
        const bool local = t.is_ref() && t.ref == RefKind::Local;
        Diagnostic d{DiagCode::E311, local ? "local reference escapes its region" : "reference escapes its region",
                     rhs.span, {}};
        d.notes.push_back({"referent lives at depth " + std::to_string(v.hi) + ", storage at depth " +
                               std::to_string(storage),
                           rhs.span});
        out_.push_back(std::move(d));
    }

    void moved_record(const Expr& e) {
        if (emit_) out_.push_back({DiagCode::E312, "local value cannot be shared or moved", e.span, {}});
    }

    // Checks a value stored into storage of known depth bound.
    void store(const Expr& rhs, int storage_depth) {
        const Interval v = value(rhs);
        if (!v.empty() && v.hi > storage_depth) escape(rhs, v, storage_depth);
    }

    void check_record_move(const Expr& rhs) {
        const SemType& t = tp_.types.at(rhs.id);
        if (t.kind == SemType::Kind::Record && rhs.kind != Expr::Kind::New) moved_record(rhs);
    }

    void expr(const Expr& e) {
        if (e.kind == Expr::Kind::New) {
            auto region = tp_.region_of.find(e.id);
            const int cell_depth = region == tp_.region_of.end() ? 0 : static_cast<int>(region->second);
            for (const auto& init : e.inits) {
                const Expr& v = init.value.front();
                check_record_move(v);
                store(v, cell_depth);
            }
        }
        for (const auto& init : e.inits) expr(init.value.front());
        for (const auto& op : e.operands) expr(op);
    }

    void stmt(const Stmt& s) {
        for (const auto& e : s.expr) expr(e);
        switch (s.kind) {
            case Stmt::Kind::Let: {
                const BindingId b = tp_.let_binding.at(s.id);
                check_record_move(s.value());
                if (tp_.bindings[b].type.is_ref()) {
                    const Interval v = value(s.value());
                    store(s.value(), static_cast<int>(tp_.bindings[b].depth));
                    changed_ |= intervals_[b].join(v);
                }
                break;
            }
            case Stmt::Kind::Assign: {
                const ResolvedPlace& rp = tp_.places.at(s.id);
                check_record_move(s.value());
                if (!rp.type.is_ref()) break;
                const Interval v = value(s.value());
                if (rp.path.empty()) {
                    store(s.value(), static_cast<int>(rp.root_depth));
                    changed_ |= intervals_[rp.root].join(v);
                } else {
                    // Field of some cell: the value must point no deeper than the shallowest possible cell.
                    const Cursor cell = walk(rp, rp.path.size() - 1);
                    const int floor = cell.iv.empty() ? 0 : cell.iv.lo;
                    if (!v.empty() && v.hi > floor) escape(s.value(), v, floor);
                }
                break;
            }
            default: break;
        }
        for (const auto& b : s.body) stmt(b);
        for (const auto& b : s.else_body) stmt(b);
    }

    const TypedProgram& tp_;
    std::vector<Interval> intervals_;
    std::vector<Diagnostic> out_;
    bool emit_ = false;
    bool changed_ = false;
};

}  // namespace

std::vector<Diagnostic> check_regions(const TypedProgram& tp, const Liveness&) {
    return RegionChecker(tp).run();
}

}  // namespace loclang::checker
