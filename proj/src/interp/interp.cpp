#include "loclang/interp.hpp"

namespace loclang::interp {

using regions::FaultCode;
using regions::Nil;
using regions::RegionFault;
using regions::RegionRef;
using regions::StackRef;

namespace {

struct RuntimeFault {
    Fault fault;
};

std::string_view ref_prefix(RefKind kind) {
    switch (kind) {
        case RefKind::Shared: return "&";
        case RefKind::Unique: return "&mut ";
        case RefKind::Local: return "&loc ";
    }
    return "&";
}

bool values_equal(const Value& a, const Value& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return x == std::get<T>(b);
        },
        a);
}

}  // namespace

std::string render_fault(const Fault& f) {
    return "fault[" + std::string(regions::to_string(f.code)) + "]: " + std::string(regions::describe(f.code)) +
           " at " + f.span.file + ":" + std::to_string(f.span.line) + ":" + std::to_string(f.span.col);
}

Interpreter::Interpreter(const checker::TypedProgram& tp, const regions::ArenaStrategy& strategy)
    : tp_(tp), store_(strategy) {}

ExecResult Interpreter::run() {
    ExecResult out;
    try {
        exec_block(tp_.program.body);
    } catch (const RuntimeFault& f) {
        out.fault = f.fault;
        while (!frames_.empty()) {
            store_.free_all();
            frames_.pop_back();
        }
    }
    out.output = std::move(output_);
    out.stats = store_.stats();
    return out;
}

void Interpreter::exec_block(const std::vector<Stmt>& body, const std::vector<checker::BindingId>* captures) {
    const std::uint32_t depth = store_.push();
    frames_.push_back(Frame{depth, store_.region(depth).generation, {}});
    std::vector<std::pair<checker::BindingId, SlotLoc>> saved;
    if (captures) {
        // Captured bindings move into the spawn frame as copies.
        for (checker::BindingId b : *captures) {
            const SlotLoc from = env_.at(b);
            Slot copy = frames_.at(from.depth).slots.at(from.slot);
            saved.emplace_back(b, from);
            env_[b] = SlotLoc{depth, frames_.back().generation, new_slot(std::move(copy))};
        }
    }
    for (const auto& s : body) exec(s);
    for (const auto& [b, loc] : saved) env_[b] = loc;
    store_.free_all();
    frames_.pop_back();
}

std::uint32_t Interpreter::new_slot(Slot s) {
    frames_.back().slots.push_back(std::move(s));
    return static_cast<std::uint32_t>(frames_.back().slots.size() - 1);
}

Interpreter::Slot& Interpreter::slot_at(std::uint32_t depth, std::uint64_t generation, std::uint32_t slot) {
    if (depth >= frames_.size() || frames_[depth].generation != generation) {
        throw RuntimeFault{{FaultCode::F002, current_}};
    }
    return frames_[depth].slots.at(slot);
}

void Interpreter::exec(const Stmt& s) {
    current_ = s.span;
    try {
        switch (s.kind) {
            case Stmt::Kind::Let: exec_let(s); break;
            case Stmt::Kind::Assign: {
                Value v = eval(s.value());
                store(eval_place(s.id, s.place), std::move(v));
                break;
            }
            case Stmt::Kind::Print: {
                Value v = eval(s.value());
                output_.push_back(render(v));
                break;
            }
            case Stmt::Kind::ExprStmt: eval(s.value()); break;
            case Stmt::Kind::While:
                while (std::get<bool>(eval(s.value()))) exec_block(s.body);
                break;
            case Stmt::Kind::If:
                if (std::get<bool>(eval(s.value()))) exec_block(s.body);
                else if (s.has_else) exec_block(s.else_body);
                break;
            case Stmt::Kind::Block: exec_block(s.body); break;
            case Stmt::Kind::Spawn: exec_block(s.body, &tp_.captures.at(s.id)); break;
        }
    } catch (const RegionFault& f) {
        throw RuntimeFault{{f.code(), current_}};
    }
}

void Interpreter::exec_let(const Stmt& s) {
    const checker::BindingId b = tp_.let_binding.at(s.id);
    const checker::Binding& bind = tp_.bindings[b];
    Value v = eval(s.value());
    Slot slot;
    if (bind.type.kind == SemType::Kind::Record) {
        // The value is the handle of a record cell (fresh for `new`, aliased otherwise).
        slot = Slot{std::move(v), true};
    } else if (bind.mode == BindMode::Loc) {
        current_ = s.span;
        RegionRef cell = store_.alloc(top(), 1, regions::kScalarCell);
        store_.write(cell, 0, std::move(v));
        slot = Slot{cell, true};
    } else {
        slot = Slot{std::move(v), false};
    }
    const std::uint32_t idx = new_slot(std::move(slot));
    env_[b] = SlotLoc{top(), frames_.back().generation, idx};
}

Location Interpreter::cell_location(const RegionRef& ref) {
    const regions::Cell& c = store_.cell(ref);
    if (c.shape == regions::kScalarCell) return FieldLoc{ref, 0};
    return CellLoc{ref};
}

Location Interpreter::deref(const Location& loc) {
    Value v = load(loc);
    if (std::holds_alternative<Nil>(v)) throw RuntimeFault{{FaultCode::F003, current_}};
    if (const auto* r = std::get_if<RegionRef>(&v)) return cell_location(*r);
    const auto& s = std::get<StackRef>(v);
    Slot& target = slot_at(s.depth, s.generation, s.slot);
    if (target.owner) return cell_location(std::get<RegionRef>(target.value));
    return SlotLoc{s.depth, s.generation, s.slot};
}

Location Interpreter::eval_place(NodeId node, const Place& place) {
    current_ = place.span;
    const checker::ResolvedPlace& rp = tp_.places.at(node);
    const SlotLoc root = env_.at(rp.root);
    Slot& slot = slot_at(root.depth, root.generation, root.slot);
    Location loc = slot.owner ? cell_location(std::get<RegionRef>(slot.value)) : Location{root};
    for (const auto& step : rp.path) {
        if (step.kind == PathStep::Kind::Deref) {
            loc = deref(loc);
        } else {
            loc = FieldLoc{std::get<CellLoc>(loc).cell, step.field};
        }
    }
    return loc;
}

Value Interpreter::load(const Location& loc) {
    if (const auto* s = std::get_if<SlotLoc>(&loc)) return slot_at(s->depth, s->generation, s->slot).value;
    if (const auto* f = std::get_if<FieldLoc>(&loc)) return store_.read(f->cell, f->field);
    const RegionRef& cell = std::get<CellLoc>(loc).cell;
    store_.cell(cell);
    return cell;
}

void Interpreter::store(const Location& loc, Value v) {
    if (const auto* s = std::get_if<SlotLoc>(&loc)) {
        slot_at(s->depth, s->generation, s->slot).value = std::move(v);
    } else if (const auto* f = std::get_if<FieldLoc>(&loc)) {
        store_.write(f->cell, f->field, std::move(v));
    } else {
        // Whole-record assignment (only reachable in unchecked mode): copy the fields.
        const RegionRef& dst = std::get<CellLoc>(loc).cell;
        const RegionRef src = std::get<RegionRef>(v);
        const std::vector<Value> fields = store_.cell(src).fields;
        for (std::uint32_t i = 0; i < fields.size(); ++i) store_.write(dst, i, fields[i]);
    }
}

std::string Interpreter::render(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    if (std::holds_alternative<Nil>(v)) return "nil";
    RegionRef cell;
    RefKind kind;
    if (const auto* r = std::get_if<RegionRef>(&v)) {
        cell = *r;
        kind = r->kind;
    } else {
        const auto& s = std::get<StackRef>(v);
        Slot& target = slot_at(s.depth, s.generation, s.slot);
        if (!target.owner) return render(target.value);
        cell = std::get<RegionRef>(target.value);
        kind = s.kind;
    }
    const regions::Cell& c = store_.cell(cell);
    if (c.shape == regions::kScalarCell) return render(c.fields.at(0));
    return std::string(ref_prefix(kind)) + tp_.records.at(static_cast<std::size_t>(c.shape)).name + "@" +
           std::to_string(cell.depth) + "." + std::to_string(cell.cell);
}

Value Interpreter::eval(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::IntLit: return e.int_value;
        case Expr::Kind::BoolLit: return e.bool_value;
        case Expr::Kind::NilLit: return Nil{};
        case Expr::Kind::PlaceRead: return load(eval_place(e.id, e.place));
        case Expr::Kind::Borrow: {
            if (e.ref == RefKind::Local) {
                Location loc = eval_place(e.id, e.place);
                RegionRef cell = std::holds_alternative<CellLoc>(loc) ? std::get<CellLoc>(loc).cell
                                                                      : std::get<FieldLoc>(loc).cell;
                cell.kind = RefKind::Local;
                return cell;
            }
            const SlotLoc root = env_.at(tp_.places.at(e.id).root);
            return StackRef{root.depth, root.generation, root.slot, e.ref};
        }
        case Expr::Kind::New: return eval_new(e);
        case Expr::Kind::Unary: {
            Value v = eval(e.operands[0]);
            if (e.unary == UnaryOp::Not) return !std::get<bool>(v);
            return static_cast<std::int64_t>(0ULL - static_cast<std::uint64_t>(std::get<std::int64_t>(v)));
        }
        case Expr::Kind::Binary: return eval_binary(e);
    }
    return Nil{};
}

Value Interpreter::eval_new(const Expr& e) {
    const std::uint32_t shape = *tp_.record_index(e.record);
    const checker::RecordInfo& rec = tp_.records[shape];
    std::vector<std::pair<std::uint32_t, Value>> values;
    for (const auto& init : e.inits) values.emplace_back(*rec.field_index(init.name), eval(init.value.front()));
    current_ = e.span;
    RegionRef cell = store_.alloc(top(), rec.fields.size(), static_cast<std::int32_t>(shape));
    for (auto& [idx, v] : values) store_.write(cell, idx, std::move(v));
    return cell;
}

Value Interpreter::eval_binary(const Expr& e) {
    if (e.binary == BinaryOp::And) {
        return std::get<bool>(eval(e.operands[0])) && std::get<bool>(eval(e.operands[1]));
    }
    if (e.binary == BinaryOp::Or) {
        return std::get<bool>(eval(e.operands[0])) || std::get<bool>(eval(e.operands[1]));
    }
    Value a = eval(e.operands[0]);
    Value b = eval(e.operands[1]);
    if (e.binary == BinaryOp::Eq) return values_equal(a, b);
    if (e.binary == BinaryOp::Ne) return !values_equal(a, b);
    const auto x = static_cast<std::uint64_t>(std::get<std::int64_t>(a));
    const auto y = static_cast<std::uint64_t>(std::get<std::int64_t>(b));
    const auto sx = std::get<std::int64_t>(a), sy = std::get<std::int64_t>(b);
    switch (e.binary) {
        case BinaryOp::Add: return static_cast<std::int64_t>(x + y);
        case BinaryOp::Sub: return static_cast<std::int64_t>(x - y);
        case BinaryOp::Mul: return static_cast<std::int64_t>(x * y);
        case BinaryOp::Lt: return sx < sy;
        case BinaryOp::Le: return sx <= sy;
        case BinaryOp::Gt: return sx > sy;
        case BinaryOp::Ge: return sx >= sy;
        default: break;
    }
    return Nil{};
}

ExecResult execute(const checker::TypedProgram& tp, const regions::ArenaStrategy& strategy) {
    return Interpreter(tp, strategy).run();
}

RunResult run_program(const Program& p, const regions::ArenaStrategy& strategy, Mode mode) {
    RunResult out;
    if (mode == Mode::Checked) {
        checker::CheckResult checked = checker::check_program(p);
        if (!checked.accepted()) {
            out.diagnostics = std::move(checked.diagnostics);
            return out;
        }
        out.exec = execute(*checked.typed, strategy);
        return out;
    }
    checker::TypecheckResult typed = checker::typecheck(p);
    if (!typed.typed) {
        out.diagnostics = std::move(typed.diagnostics);
        sort_diagnostics(out.diagnostics);
        return out;
    }
    out.exec = execute(*typed.typed, strategy);
    return out;
}

}  // namespace loclang::interp
