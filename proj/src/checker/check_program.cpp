#include "loclang/checker.hpp"

namespace loclang::checker {

CheckResult check_program(const Program& p) {
    CheckResult out;
    TypecheckResult typed = typecheck(p);
    if (!typed.typed) {
        out.diagnostics = std::move(typed.diagnostics);
        sort_diagnostics(out.diagnostics);
        return out;
    }
    const TypedProgram& tp = *typed.typed;
    const Liveness live = compute_liveness(tp);
    for (auto phase : {check_loans(tp, live), check_regions(tp, live), check_threads(tp)}) {
        out.diagnostics.insert(out.diagnostics.end(), phase.begin(), phase.end());
    }
    sort_diagnostics(out.diagnostics);
    out.typed = std::move(typed.typed);
    return out;
}

}  // namespace loclang::checker
