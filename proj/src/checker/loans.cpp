#include <algorithm>
#include <set>

#include "loclang/checker.hpp"
#include "loclang/syntax.hpp"

namespace loclang::checker {

namespace {

bool may_hold_refs(const SemType& t) { return t.is_ref() || t.kind == SemType::Kind::Record; }

// A value flowing into the storage rooted at `target`.
struct Flow {
    BindingId target = 0;
    bool through_deref = false;
    std::set<LoanId> created;
    std::set<BindingId> sources;
};

class LoanCollector {
public:
    LoanCollector(const TypedProgram& tp, const Liveness& live) : tp_(tp), live_(live) {}

    std::vector<Loan> run() {
        for (const auto& u : tp_.uses) {
            if (u.kind != UseKind::Borrow) continue;
            const ResolvedPlace& rp = tp_.places.at(u.node);
            const SemType& t = tp_.types.at(u.node);
            Loan l;
            l.id = static_cast<LoanId>(loans_.size());
            l.kind = t.ref;
            l.root = rp.root;
            l.path = rp.path;
            l.node = u.node;
            l.created = u.at;
            l.span = u.span;
            loan_of_node_[u.node] = l.id;
            loans_.push_back(std::move(l));
        }
        for (const auto& s : tp_.program.body) collect_flows(s);
        propagate();
        finish_ranges();
        return std::move(loans_);
    }

private:
    void gather(const Expr& e, Flow& f) {
        switch (e.kind) {
            case Expr::Kind::Borrow: {
                f.created.insert(loan_of_node_.at(e.id));
                const ResolvedPlace& rp = tp_.places.at(e.id);
                if (rp.has_deref()) f.sources.insert(rp.root);
                break;
            }
            case Expr::Kind::PlaceRead: {
                const ResolvedPlace& rp = tp_.places.at(e.id);
                if (may_hold_refs(rp.type)) f.sources.insert(rp.root);
                break;
            }
            default: break;
        }
        for (const auto& init : e.inits) gather(init.value.front(), f);
        for (const auto& op : e.operands) gather(op, f);
    }

    void collect_flows(const Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::Let: {
                const BindingId b = tp_.let_binding.at(s.id);
                if (may_hold_refs(tp_.bindings[b].type)) {
                    Flow f;
                    f.target = b;
                    gather(s.value(), f);
                    flows_.push_back(std::move(f));
                }
                break;
            }
            case Stmt::Kind::Assign: {
                const ResolvedPlace& rp = tp_.places.at(s.id);
                if (may_hold_refs(rp.type)) {
                    Flow f;
                    f.target = rp.root;
                    f.through_deref = rp.has_deref();
                    gather(s.value(), f);
                    flows_.push_back(std::move(f));
                }
                break;
            }
            default: break;
        }
        for (const auto& b : s.body) collect_flows(b);
        for (const auto& b : s.else_body) collect_flows(b);
    }

    bool add_all(BindingId to, const std::set<LoanId>& loans) {
        auto& dst = held_[to];
        const std::size_t before = dst.size();
        dst.insert(loans.begin(), loans.end());
        return dst.size() != before;
    }

    void propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& f : flows_) {
                std::set<LoanId> incoming = f.created;
                for (BindingId src : f.sources) {
                    auto it = held_.find(src);
                    if (it != held_.end()) incoming.insert(it->second.begin(), it->second.end());
                }
                changed |= add_all(f.target, incoming);
                if (f.through_deref) {
                    // Stored through a reference: whatever the target references now holds the value too.
                    std::set<BindingId> owners;
                    for (LoanId l : held_[f.target]) owners.insert(loans_[l].root);
                    for (BindingId o : owners) changed |= add_all(o, incoming);
                }
            }
        }
    }

    void finish_ranges() {
        for (auto& [binding, loans] : held_) {
            for (LoanId l : loans) loans_[l].holders.push_back(binding);
        }
        for (auto& l : loans_) {
            std::sort(l.holders.begin(), l.holders.end());
            l.range.start = l.range.end = l.created;
            bool escapes_iteration = false;
            for (BindingId h : l.holders) l.range.end = std::max(l.range.end, live_[h].end);
            std::vector<StmtIndex> loops;
            if (tp_.stmts[l.created].kind == Stmt::Kind::While) loops.push_back(l.created);
            for (auto lp = tp_.stmts[l.created].loop; lp; lp = tp_.stmts[*lp].loop) loops.push_back(*lp);
            for (StmtIndex loop : loops) {
                for (BindingId h : l.holders) {
                    if (tp_.bindings[h].let_index < loop) escapes_iteration = true;
                }
                if (escapes_iteration) {
                    l.range.start = std::min(l.range.start, loop);
                    l.range.end = std::max(l.range.end, tp_.stmts[loop].last);
                }
            }
        }
    }

    const TypedProgram& tp_;
    const Liveness& live_;
    std::vector<Loan> loans_;
    std::unordered_map<NodeId, LoanId> loan_of_node_;
    std::vector<Flow> flows_;
    std::map<BindingId, std::set<LoanId>> held_;
};

std::string place_name(const TypedProgram& tp, BindingId root, const std::vector<ResolvedStep>& path) {
    Place p;
    p.root = tp.bindings[root].name;
    for (const auto& step : path) {
        if (step.implicit) continue;
        p.path.push_back(PathStep{step.kind, step.name});
    }
    return syntax::format_place(p);
}

bool overlaps(const LiveRange& a, const LiveRange& b) { return a.start <= b.end && b.start <= a.end; }

}  // namespace

bool places_overlap(BindingId root_a, const std::vector<ResolvedStep>& a, BindingId root_b,
                    const std::vector<ResolvedStep>& b) {
    if (root_a != root_b) return false;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].kind != b[i].kind) return false;
        if (a[i].kind == PathStep::Kind::Field && a[i].field != b[i].field) return false;
    }
    return true;
}

std::vector<Loan> collect_loans(const TypedProgram& tp, const Liveness& live) {
    return LoanCollector(tp, live).run();
}

std::vector<Diagnostic> check_loans(const TypedProgram& tp, const Liveness& live) {
    const std::vector<Loan> loans = collect_loans(tp, live);
    std::vector<Diagnostic> out;

    // Loan against loan: report at the later loan, first conflict only.
    for (std::size_t j = 0; j < loans.size(); ++j) {
        const Loan& later = loans[j];
        for (std::size_t i = 0; i < j; ++i) {
            const Loan& earlier = loans[i];
            if (!places_overlap(earlier.root, earlier.path, later.root, later.path)) continue;
            if (!overlaps(earlier.range, later.range)) continue;
            const RefKind a = earlier.kind, b = later.kind;
            auto is = [&](RefKind x, RefKind y) { return (a == x && b == y) || (a == y && b == x); };
            const std::string name = place_name(tp, later.root, later.path);
            Diagnostic d;
            if (is(RefKind::Unique, RefKind::Unique)) {
                d = {DiagCode::E301, "cannot borrow '" + name + "' as mutable more than once", later.span, {}};
            } else if (is(RefKind::Shared, RefKind::Unique)) {
                d = {DiagCode::E302,
                     "cannot borrow '" + name + "' as " + (b == RefKind::Shared ? "shared" : "mutable") +
                         " because it is also borrowed as " + (a == RefKind::Shared ? "shared" : "mutable"),
                     later.span, {}};
            } else if (is(RefKind::Local, RefKind::Unique)) {
                d = {DiagCode::E304, "local and unique loans conflict on '" + name + "'", later.span, {}};
            } else if (is(RefKind::Local, RefKind::Shared)) {
                d = {DiagCode::E305, "shared read during local mutation of '" + name + "'", later.span, {}};
            } else {
                continue;
            }
            d.notes.push_back({"conflicting borrow here", earlier.span});
            out.push_back(std::move(d));
            break;
        }
    }

    // Direct access to a place while a shared or unique loan on it is live.
    for (const auto& u : tp.uses) {
        const ResolvedPlace& rp = tp.places.at(u.node);
        bool write = false;
        std::vector<ResolvedStep> accessed;
        switch (u.kind) {
            case UseKind::DirectWrite:
                write = true;
                accessed = rp.path;
                break;
            case UseKind::Read:
            case UseKind::WriteThrough:
                accessed.assign(rp.path.begin(), rp.path.begin() + static_cast<std::ptrdiff_t>(rp.direct_length()));
                break;
            case UseKind::Borrow:
                if (!rp.has_deref()) continue;
                accessed.assign(rp.path.begin(), rp.path.begin() + static_cast<std::ptrdiff_t>(rp.direct_length()));
                break;
        }
        for (const auto& l : loans) {
            if (l.kind == RefKind::Local || l.node == u.node) continue;
            if (!places_overlap(l.root, l.path, u.binding, accessed)) continue;
            const bool live_here = write ? (l.range.start < u.at && u.at < l.range.end)
                                         : (l.range.start < u.at && u.at <= l.range.end);
            if (!live_here) continue;
            const std::string name = place_name(tp, u.binding, accessed);
            if (write) {
                out.push_back({DiagCode::E303, "cannot assign to '" + name + "' while it is borrowed", u.span,
                               {{"borrow here", l.span}}});
                break;
            }
            if (l.kind == RefKind::Unique) {
                out.push_back({DiagCode::E302, "cannot read '" + name + "' while it is mutably borrowed", u.span,
                               {{"mutable borrow here", l.span}}});
                break;
            }
        }
    }
    return out;
}

}  // namespace loclang::checker
