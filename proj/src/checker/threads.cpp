#include <set>

#include "loclang/checker.hpp"

namespace loclang::checker {

namespace {

bool mentions_local(const SemType& t) {
    if (t.kind == SemType::Kind::Record) return true;  // records only live in regions
    if (t.is_ref()) return t.ref == RefKind::Local || mentions_local(*t.target);
    return false;
}

void find_spawns(const std::vector<Stmt>& body, std::vector<const Stmt*>& out) {
    for (const auto& s : body) {
        if (s.kind == Stmt::Kind::Spawn) out.push_back(&s);
        find_spawns(s.body, out);
        find_spawns(s.else_body, out);
    }
}

}  // namespace

std::vector<Diagnostic> check_threads(const TypedProgram& tp) {
    const Liveness live = compute_liveness(tp);
    const std::vector<Loan> loans = collect_loans(tp, live);

    // Bindings that hold a loan on a place owned by a `loc` binding.
    std::set<BindingId> reaches_local;
    for (const auto& l : loans) {
        if (tp.bindings[l.root].mode != BindMode::Loc) continue;
        reaches_local.insert(l.holders.begin(), l.holders.end());
    }

    std::vector<const Stmt*> spawns;
    find_spawns(tp.program.body, spawns);

    std::vector<Diagnostic> out;
    for (const Stmt* sp : spawns) {
        const StmtIndex at = tp.stmt_index.at(sp->id);
        const StmtIndex last = tp.stmts[at].last;
        auto first_use = [&](BindingId b, StmtIndex lo, StmtIndex hi) -> const Use* {
            for (const auto& u : tp.uses)
                if (u.binding == b && u.at >= lo && u.at <= hi) return &u;
            return nullptr;
        };
        for (BindingId b : tp.captures.at(sp->id)) {
            const Binding& bind = tp.bindings[b];
            const Use* inside = first_use(b, at + 1, last);
            const Span span = inside ? inside->span : sp->span;
            if (bind.mode == BindMode::Loc || mentions_local(bind.type) || reaches_local.count(b)) {
                out.push_back({DiagCode::E313, "local value '" + bind.name + "' captured by spawned thread", span,
                               {{"declared here", bind.span}}});
                continue;
            }
            if (const Use* after = first_use(b, last + 1, static_cast<StmtIndex>(tp.stmts.size()))) {
                out.push_back({DiagCode::E314, "use of value '" + bind.name + "' moved into spawn", after->span,
                               {{"moved here", span}}});
                continue;
            }
            // A borrow taken before the spawn and used after it reads the moved value.
            const Use* via = nullptr;
            for (const auto& l : loans) {
                if (l.root != b || l.created >= at || l.range.end <= last) continue;
                for (BindingId h : l.holders) {
                    const Use* u = first_use(h, last + 1, l.range.end);
                    if (u && (!via || u->at < via->at)) via = u;
                }
            }
            if (via) {
                out.push_back({DiagCode::E314, "use of value '" + bind.name + "' moved into spawn", via->span,
                               {{"moved here", span}}});
                continue;
            }
            for (auto loop = tp.stmts[at].loop; loop; loop = tp.stmts[*loop].loop) {
                if (bind.let_index < *loop) {
                    out.push_back({DiagCode::E314,
                                   "use of value '" + bind.name + "' moved into spawn in a previous loop iteration",
                                   span, {}});
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace loclang::checker
