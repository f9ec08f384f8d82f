#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "loclang/checker.hpp"
#include "loclang/regions.hpp"

namespace loclang::interp {

using regions::FaultCode;
using regions::Value;

enum class Mode { Checked, Unchecked };

struct Fault {
    FaultCode code;
    Span span;
};

/// `fault[F002]: dangling region access at file.loc:L:C`
std::string render_fault(const Fault& f);

struct ExecResult {
    std::vector<std::string> output;
    regions::RegionStats stats;
    std::optional<Fault> fault;
};

struct RunResult {
    std::vector<Diagnostic> diagnostics;  // non-empty means the program did not run
    std::optional<ExecResult> exec;
};

/// Checks (or, in unchecked mode, only typechecks) and then executes.
RunResult run_program(const Program& p, const regions::ArenaStrategy& strategy, Mode mode);

/// Executes a typed program. Faults stop execution; open regions are still freed.
ExecResult execute(const checker::TypedProgram& tp, const regions::ArenaStrategy& strategy);

// Places resolve to one of these locations.
struct SlotLoc {
    std::uint32_t depth = 0;
    std::uint64_t generation = 0;
    std::uint32_t slot = 0;
};
struct FieldLoc {
    regions::RegionRef cell;
    std::uint32_t field = 0;
};
struct CellLoc {
    regions::RegionRef cell;
};
using Location = std::variant<SlotLoc, FieldLoc, CellLoc>;

class Interpreter {
public:
    Interpreter(const checker::TypedProgram& tp, const regions::ArenaStrategy& strategy);

    ExecResult run();

    /// Resolves the place of a PlaceRead/Borrow expression or Assign statement.
    Location eval_place(NodeId node, const Place& place);
    Value load(const Location& loc);
    std::string render(const Value& v);

private:
    struct Slot {
        Value value;
        bool owner = false;  // value is the handle of the binding's own cell
    };
    struct Frame {
        std::uint32_t depth = 0;
        std::uint64_t generation = 0;
        std::vector<Slot> slots;
    };

    void exec(const Stmt& s);
    void exec_block(const std::vector<Stmt>& body, const std::vector<checker::BindingId>* captures = nullptr);
    void exec_let(const Stmt& s);
    Value eval(const Expr& e);
    Value eval_new(const Expr& e);
    Value eval_binary(const Expr& e);

    Location cell_location(const regions::RegionRef& ref);
    Location deref(const Location& loc);
    void store(const Location& loc, Value v);
    Slot& slot_at(std::uint32_t depth, std::uint64_t generation, std::uint32_t slot);
    std::uint32_t new_slot(Slot s);
    std::uint32_t top() const { return static_cast<std::uint32_t>(frames_.size() - 1); }

    const checker::TypedProgram& tp_;
    regions::RegionStore store_;
    std::vector<Frame> frames_;
    std::unordered_map<checker::BindingId, SlotLoc> env_;
    std::vector<std::string> output_;
    Span current_;
};

}  // namespace loclang::interp
