#include <algorithm>

#include "loclang/checker.hpp"

namespace loclang::checker {

namespace {

// Enclosing loops of statement `at`, innermost first. A while statement's own
// condition is inside its loop.
std::vector<StmtIndex> loops_around(const TypedProgram& tp, StmtIndex at) {
    std::vector<StmtIndex> out;
    if (tp.stmts[at].kind == Stmt::Kind::While) out.push_back(at);
    for (auto l = tp.stmts[at].loop; l; l = tp.stmts[*l].loop) out.push_back(*l);
    return out;
}

bool counts_as_use(const TypedProgram& tp, const Use& u) {
    switch (u.kind) {
        case UseKind::Read:
        case UseKind::WriteThrough: return true;
        case UseKind::DirectWrite: return false;
        case UseKind::Borrow: {
            auto it = tp.places.find(u.node);
            return it != tp.places.end() && it->second.has_deref();
        }
    }
    return false;
}

}  // namespace

Liveness compute_liveness(const TypedProgram& tp) {
    Liveness live(tp.bindings.size());
    for (BindingId b = 0; b < tp.bindings.size(); ++b) {
        live[b].start = live[b].end = tp.bindings[b].let_index;
    }
    for (const auto& u : tp.uses) {
        if (!counts_as_use(tp, u)) continue;
        LiveRange& r = live[u.binding];
        r.end = std::max(r.end, u.at);
        // A binding declared outside a loop and used inside it stays live to the loop's end.
        for (StmtIndex loop : loops_around(tp, u.at)) {
            if (tp.bindings[u.binding].let_index < loop) r.end = std::max(r.end, tp.stmts[loop].last);
        }
    }
    return live;
}

}  // namespace loclang::checker
