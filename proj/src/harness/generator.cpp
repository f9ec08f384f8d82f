#include <random>

#include "loclang/harness.hpp"

namespace loclang::harness {

namespace {

// Portable across standard libraries: only the engine is used, never a distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint32_t below(std::uint32_t n) { return n == 0 ? 0 : static_cast<std::uint32_t>(engine_() % n); }
    bool chance(std::uint32_t percent) { return below(100) < percent; }
    std::int64_t small() { return static_cast<std::int64_t>(below(100)); }

private:
    std::mt19937_64 engine_;
};

struct Var {
    enum class Kind { Int, LocInt, Owner, LRef, LIntRef, SRef, URef };
    std::string name;
    Kind kind;
    BindMode mode = BindMode::Plain;
    std::uint32_t record = 0;
};

struct Shape {
    std::string name;
    std::optional<std::uint32_t> peer;
};

class Generator {
public:
    Generator(const GenConfig& cfg, std::uint32_t index)
        : cfg_(cfg), rng_(cfg.seed * 0x9E3779B97F4A7C15ULL + index) {}

    Program run() {
        Program p;
        const std::uint32_t n = 1 + rng_.below(std::max<std::uint32_t>(cfg_.max_records, 1));
        for (std::uint32_t i = 0; i < n; ++i) {
            Shape s{"R" + std::to_string(i), std::nullopt};
            if (n > 1 && rng_.chance(50)) s.peer = (i + 1) % n;
            shapes_.push_back(s);
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            RecordDecl d;
            d.name = shapes_[i].name;
            d.fields.emplace_back("val", SemType::int_type());
            d.fields.emplace_back("next", lref_type(i));
            if (shapes_[i].peer) d.fields.emplace_back("peer", lref_type(*shapes_[i].peer));
            p.records.push_back(std::move(d));
        }
        p.body = block(0, cfg_.max_stmts);
        return p;
    }

private:
    SemType lref_type(std::uint32_t rec) const {
        return SemType::ref_type(RefKind::Local, SemType::record_type(shapes_[rec].name), true);
    }

    std::string fresh(const char* prefix) { return prefix + std::to_string(next_name_++); }

    std::vector<const Var*> visible(std::initializer_list<Var::Kind> kinds) const {
        std::vector<const Var*> out;
        for (const auto& scope : scopes_) {
            for (const auto& v : scope) {
                for (auto k : kinds) {
                    if (v.kind == k) out.push_back(&v);
                }
            }
        }
        return out;
    }

    template <class T>
    const T* pick(const std::vector<const T*>& xs) {
        return xs.empty() ? nullptr : xs[rng_.below(static_cast<std::uint32_t>(xs.size()))];
    }

    // ---- expressions ----------------------------------------------------

    Expr int_expr(int budget) {
        const std::uint32_t roll = rng_.below(budget > 0 ? 10 : 7);
        if (roll < 2) return make_int(rng_.small());
        if (roll < 4) {
            if (auto v = pick(visible({Var::Kind::Int, Var::Kind::LocInt}))) return make_read(make_place(v->name));
        }
        if (roll == 4) {
            if (auto v = pick(visible({Var::Kind::SRef, Var::Kind::URef, Var::Kind::LIntRef}))) {
                return make_read(make_place(v->name, {PathStep{PathStep::Kind::Deref, {}}}));
            }
        }
        if (roll == 5) {
            if (auto v = pick(visible({Var::Kind::Owner}))) return make_read(make_place(v->name, {field("val")}));
        }
        if (roll == 6) {
            if (auto v = pick(visible({Var::Kind::LRef}))) return make_read(make_place(v->name, {field("val")}));
        }
        if (roll >= 7) {
            static constexpr BinaryOp ops[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul};
            return make_binary(ops[rng_.below(3)], int_expr(budget - 1), int_expr(budget - 1));
        }
        return make_int(rng_.small());
    }

    Expr bool_expr() {
        if (rng_.chance(25)) {
            if (auto v = pick(visible({Var::Kind::LRef}))) {
                return make_binary(rng_.chance(50) ? BinaryOp::Eq : BinaryOp::Ne, make_read(make_place(v->name)),
                                   make_nil());
            }
        }
        static constexpr BinaryOp ops[] = {BinaryOp::Lt, BinaryOp::Le, BinaryOp::Gt,
                                           BinaryOp::Ge, BinaryOp::Eq, BinaryOp::Ne};
        return make_binary(ops[rng_.below(6)], int_expr(1), int_expr(0));
    }

    static PathStep field(std::string name) { return PathStep{PathStep::Kind::Field, std::move(name)}; }

    std::vector<const Var*> owners_of(std::uint32_t rec) const {
        std::vector<const Var*> out;
        for (const Var* v : visible({Var::Kind::Owner})) {
            if (v->record == rec) out.push_back(v);
        }
        return out;
    }

    std::vector<const Var*> lrefs_of(std::uint32_t rec) const {
        std::vector<const Var*> out;
        for (const Var* v : visible({Var::Kind::LRef})) {
            if (v->record == rec) out.push_back(v);
        }
        return out;
    }

    // An expression of type `&loc R?`.
    Expr lref_expr(std::uint32_t rec, int budget) {
        const std::uint32_t roll = rng_.below(10);
        if (roll < 4) {
            if (auto o = pick(owners_of(rec))) return make_borrow(RefKind::Local, make_place(o->name));
        }
        if (roll < 6 && budget > 0) return new_expr(rec, budget - 1);
        if (roll < 8) {
            if (auto r = pick(lrefs_of(rec))) return make_read(make_place(r->name));
        }
        if (roll < 9) {
            std::vector<const Var*> holders = owners_of(rec);
            for (const Var* r : lrefs_of(rec)) holders.push_back(r);
            if (auto h = pick(holders)) return make_read(make_place(h->name, {field("next")}));
        }
        return make_nil();
    }

    Expr new_expr(std::uint32_t rec, int budget) {
        std::vector<std::pair<std::string, Expr>> inits;
        inits.emplace_back("val", int_expr(1));
        inits.emplace_back("next", lref_expr(rec, budget));
        if (shapes_[rec].peer) inits.emplace_back("peer", lref_expr(*shapes_[rec].peer, budget));
        if (rng_.chance(30)) std::swap(inits.front(), inits.back());
        return make_new(shapes_[rec].name, std::move(inits));
    }

    // ---- statements -----------------------------------------------------

    std::vector<Stmt> block(std::uint32_t depth, std::uint32_t budget) {
        scopes_.emplace_back();
        std::vector<Stmt> out;
        const std::uint32_t n = 1 + rng_.below(std::max<std::uint32_t>(budget, 1));
        for (std::uint32_t i = 0; i < n; ++i) stmt(depth, out);
        scopes_.pop_back();
        return out;
    }

    void declare(Var v) { scopes_.back().push_back(std::move(v)); }

    std::vector<Stmt> child(std::uint32_t depth) { return block(depth + 1, std::max<std::uint32_t>(cfg_.max_stmts / 2, 2)); }

    void stmt(std::uint32_t depth, std::vector<Stmt>& out) {
        const bool nest = depth < cfg_.max_depth;
        switch (rng_.below(nest ? 17 : 12)) {
            case 0: {  // let scalar
                static constexpr BindMode modes[] = {BindMode::Plain, BindMode::Mut, BindMode::Loc};
                const BindMode mode = modes[rng_.below(3)];
                const std::string name = fresh("v");
                std::optional<SemType> t;
                if (mode == BindMode::Loc || rng_.chance(50)) t = SemType::int_type();
                out.push_back(make_let(mode, name, t, int_expr(2)));
                declare(Var{name, mode == BindMode::Loc ? Var::Kind::LocInt : Var::Kind::Int, mode, 0});
                return;
            }
            case 1: {  // local owner
                const std::uint32_t rec = rng_.below(static_cast<std::uint32_t>(shapes_.size()));
                const std::string name = fresh("n");
                out.push_back(make_let(BindMode::Loc, name, std::nullopt, new_expr(rec, 1)));
                declare(Var{name, Var::Kind::Owner, BindMode::Loc, rec});
                return;
            }
            case 2: {  // local reference to a record
                const std::uint32_t rec = rng_.below(static_cast<std::uint32_t>(shapes_.size()));
                const std::string name = fresh("r");
                out.push_back(make_let(BindMode::Mut, name, lref_type(rec), lref_expr(rec, 1)));
                declare(Var{name, Var::Kind::LRef, BindMode::Mut, rec});
                return;
            }
            case 3: {  // borrow a scalar
                const Var* v = pick(visible({Var::Kind::Int, Var::Kind::LocInt}));
                if (!v) break;
                const std::uint32_t roll = rng_.below(3);
                const RefKind kind = roll == 0 ? RefKind::Shared
                                     : roll == 1 ? RefKind::Unique
                                                 : (v->kind == Var::Kind::LocInt ? RefKind::Local : RefKind::Unique);
                const std::string name = fresh("b");
                out.push_back(make_let(BindMode::Plain, name, std::nullopt, make_borrow(kind, make_place(v->name))));
                declare(Var{name,
                            kind == RefKind::Shared   ? Var::Kind::SRef
                            : kind == RefKind::Unique ? Var::Kind::URef
                                                      : Var::Kind::LIntRef,
                            BindMode::Plain, 0});
                return;
            }
            case 4: {  // assign a scalar
                const Var* v = pick(visible({Var::Kind::Int, Var::Kind::LocInt}));
                if (!v) break;
                out.push_back(make_assign(make_place(v->name), int_expr(2)));
                return;
            }
            case 5: {  // write through a reference
                const Var* v = pick(visible({Var::Kind::URef, Var::Kind::LIntRef, Var::Kind::SRef}));
                if (!v) break;
                if (v->kind == Var::Kind::SRef && rng_.chance(70)) break;
                out.push_back(make_assign(make_place(v->name, {PathStep{PathStep::Kind::Deref, {}}}), int_expr(1)));
                return;
            }
            case 6: {  // assign a record field
                const Var* v = pick(visible({Var::Kind::Owner, Var::Kind::LRef}));
                if (!v) break;
                const auto& shape = shapes_[v->record];
                const std::uint32_t roll = rng_.below(shape.peer ? 3 : 2);
                if (roll == 0) {
                    out.push_back(make_assign(make_place(v->name, {field("val")}), int_expr(1)));
                } else if (roll == 1) {
                    out.push_back(make_assign(make_place(v->name, {field("next")}), lref_expr(v->record, 1)));
                } else {
                    out.push_back(make_assign(make_place(v->name, {field("peer")}), lref_expr(*shape.peer, 1)));
                }
                return;
            }
            case 7: {  // retarget a local reference
                const Var* v = pick(visible({Var::Kind::LRef}));
                if (!v) break;
                out.push_back(make_assign(make_place(v->name), lref_expr(v->record, 1)));
                return;
            }
            case 8:
            case 9:
            case 10: {
                if (rng_.chance(15)) {
                    if (auto v = pick(visible({Var::Kind::LRef, Var::Kind::SRef, Var::Kind::URef, Var::Kind::LIntRef}))) {
                        out.push_back(make_print(make_read(make_place(v->name))));
                        return;
                    }
                }
                out.push_back(make_print(int_expr(2)));
                return;
            }
            case 11: out.push_back(make_expr_stmt(int_expr(1))); return;
            case 12:
            case 13: out.push_back(make_block(child(depth))); return;
            case 14: {
                std::optional<std::vector<Stmt>> els;
                auto then = child(depth);
                if (rng_.chance(40)) els = child(depth);
                out.push_back(make_if(bool_expr(), std::move(then), std::move(els)));
                return;
            }
            case 15: {  // counter loop; the counter is never visible to the body
                const std::string i = fresh("i");
                out.push_back(make_let(BindMode::Mut, i, SemType::int_type(), make_int(0)));
                auto body = child(depth);
                body.push_back(make_assign(make_place(i), make_binary(BinaryOp::Add, make_read(make_place(i)), make_int(1))));
                const auto bound = static_cast<std::int64_t>(1 + rng_.below(3));
                out.push_back(make_while(make_binary(BinaryOp::Lt, make_read(make_place(i)), make_int(bound)), std::move(body)));
                return;
            }
            case 16: out.push_back(make_spawn(child(depth))); return;
        }
        out.push_back(make_print(int_expr(1)));
    }

    const GenConfig& cfg_;
    Rng rng_;
    std::vector<Shape> shapes_;
    std::vector<std::vector<Var>> scopes_;
    std::uint32_t next_name_ = 0;
};

}  // namespace

Program gen_program(const GenConfig& cfg, std::uint32_t index) {
    Program p = Generator(cfg, index).run();
    assign_node_ids(p);
    return p;
}

}  // namespace loclang::harness
