#include "casq/inliner.hpp"

#include <map>
#include <stdexcept>

#include "casq/parser.hpp"

namespace casq {

namespace {

std::vector<std::string> full_callgraph_order(const Program& p);

// Reserved register names for pool placeholders inside flattened bodies;
// '$' cannot appear in parsed identifiers so these never collide.
const std::string kCleanSlot = "$c";
const std::string kDirtySlot = "$d";

struct FlatGate {
    std::vector<std::string> cparams;
    std::vector<std::string> qparams;
    std::int64_t clean_slots = 0;
    std::int64_t dirty_slots = 0;
    std::vector<Stmt> body;
};

class Inliner {
  public:
    Inliner(const Program& p, const InlineConfig& cfg) : p_(p), cfg_(cfg) {}

    Program run() {
        collect_targets();
        for (const auto& name : full_callgraph_order(p_))
            if (targets_.count(name))
                flatten(name);

        Program out;
        out.includes = p_.includes;
        std::int64_t pool = 0;
        std::vector<TopLevel> tail;
        for (const auto& it : p_.items) {
            const auto* s = it.as<Stmt>();
            if (!s) {
                tail.push_back(it);
                continue;
            }
            for (auto& stmt : expand_main(*s, pool))
                tail.push_back(TopLevel{it.pos, std::move(stmt)});
        }
        if (pool > 0) {
            // hoist the ancilla register to the top of the global scope,
            // just before the first register declaration or statement
            std::string name = pool_name();
            std::vector<TopLevel> placed;
            bool inserted = false;
            for (auto& it : tail) {
                bool is_decl_point = it.as<RegisterDecl>() || it.as<Stmt>();
                if (!inserted && is_decl_point) {
                    placed.push_back(TopLevel{{}, RegisterDecl{true, name, pool}});
                    inserted = true;
                }
                placed.push_back(std::move(it));
            }
            if (!inserted)
                placed.push_back(TopLevel{{}, RegisterDecl{true, name, pool}});
            for (auto& it : placed)
                rename_slots(it, name);
            tail = std::move(placed);
        }
        out.items = std::move(tail);
        return out;
    }

  private:
    const Program& p_;
    const InlineConfig& cfg_;
    std::set<std::string> targets_; // gates to inline
    std::map<std::string, FlatGate> flat_;
    std::set<std::string> idle_in_use_; // dirty bindings for the current statement

    void collect_targets() {
        for (const auto& it : p_.items) {
            const auto* g = it.as<GateDecl>();
            if (!g || g->opaque)
                continue;
            if (cfg_.full || !cfg_.overrides.count(g->name))
                targets_.insert(g->name);
        }
    }

    // ---- per-declaration flattening ---------------------------------------

    void flatten(const std::string& name) {
        const GateDecl* g = p_.find_gate(name);
        FlatGate f;
        f.cparams = g->cparams;
        f.qparams = g->qparams;

        // own locals live across the whole body
        std::map<std::string, std::pair<std::string, std::int64_t>> local; // name -> (slot reg, base)
        for (const auto& a : g->ancillas) {
            if (a.dirty) {
                local[a.name] = {kDirtySlot, f.dirty_slots};
                f.dirty_slots += a.size;
            } else {
                local[a.name] = {kCleanSlot, f.clean_slots};
                f.clean_slots += a.size;
            }
        }
        std::int64_t own_clean = f.clean_slots, own_dirty = f.dirty_slots;

        for (const auto& s : g->body) {
            const auto* call = s.as<GateCall>();
            Stmt mapped = remap_args(s, local);
            if (!call || !targets_.count(call->name)) {
                f.body.push_back(std::move(mapped));
                continue;
            }
            const FlatGate& h = flat_.at(call->name);
            // transient slots for the callee sit above this gate's own locals
            f.clean_slots = std::max(f.clean_slots, own_clean + h.clean_slots);
            f.dirty_slots = std::max(f.dirty_slots, own_dirty + h.dirty_slots);
            splice_call(*mapped.as<GateCall>(), h, own_clean, own_dirty, f.body);
        }
        flat_[name] = std::move(f);
    }

    Stmt remap_args(const Stmt& s,
                    const std::map<std::string, std::pair<std::string, std::int64_t>>& local) const {
        if (const auto* call = s.as<GateCall>()) {
            GateCall c = *call;
            for (auto& a : c.qargs)
                remap_arg(a, local);
            return Stmt{s.pos, std::move(c)};
        }
        if (const auto* b = s.as<BarrierStmt>()) {
            BarrierStmt nb = *b;
            for (auto& a : nb.args)
                remap_arg(a, local);
            return Stmt{s.pos, std::move(nb)};
        }
        return s;
    }

    static void remap_arg(Arg& a,
                          const std::map<std::string, std::pair<std::string, std::int64_t>>& local) {
        auto it = local.find(a.reg);
        if (it == local.end())
            return;
        a = Arg{it->second.first, it->second.second + a.index.value_or(0), a.pos};
    }

    // Substitute actuals into a flattened callee body and append it.
    void splice_call(const GateCall& call, const FlatGate& h, std::int64_t clean_base,
                     std::int64_t dirty_base, std::vector<Stmt>& out) const {
        std::map<std::string, AngleExprPtr> abind;
        for (std::size_t i = 0; i < h.cparams.size(); ++i)
            abind[h.cparams[i]] = call.cargs[i];
        std::map<std::string, Arg> qbind;
        for (std::size_t i = 0; i < h.qparams.size(); ++i)
            qbind[h.qparams[i]] = call.qargs[i];

        for (const auto& s : h.body)
            out.push_back(substitute_stmt(s, abind, qbind, clean_base, dirty_base));
    }

    static Stmt substitute_stmt(const Stmt& s, const std::map<std::string, AngleExprPtr>& abind,
                                const std::map<std::string, Arg>& qbind, std::int64_t clean_base,
                                std::int64_t dirty_base) {
        auto sub_arg = [&](const Arg& a) -> Arg {
            if (a.reg == kCleanSlot)
                return Arg{kCleanSlot, clean_base + *a.index, a.pos};
            if (a.reg == kDirtySlot)
                return Arg{kDirtySlot, dirty_base + *a.index, a.pos};
            auto it = qbind.find(a.reg);
            return it == qbind.end() ? a : it->second;
        };
        if (const auto* call = s.as<GateCall>()) {
            GateCall c;
            c.name = call->name;
            for (const auto& e : call->cargs)
                c.cargs.push_back(AngleExpr::substitute(e, abind));
            for (const auto& a : call->qargs)
                c.qargs.push_back(sub_arg(a));
            return Stmt{s.pos, std::move(c)};
        }
        if (const auto* b = s.as<BarrierStmt>()) {
            BarrierStmt nb;
            for (const auto& a : b->args)
                nb.args.push_back(sub_arg(a));
            return Stmt{s.pos, std::move(nb)};
        }
        return s;
    }

    // ---- main-body expansion ----------------------------------------------

    std::vector<Stmt> expand_main(const Stmt& s, std::int64_t& pool) {
        if (const auto* i = s.as<IfStmt>()) {
            std::vector<Stmt> inner = expand_main(*i->body, pool);
            if (inner.size() == 1 && structurally_equal(inner[0], *i->body))
                return {s};
            std::vector<Stmt> out;
            for (auto& b : inner)
                out.push_back(Stmt{s.pos, IfStmt{i->creg, i->value,
                                                 std::make_shared<const Stmt>(std::move(b))}});
            return out;
        }
        const auto* call = s.as<GateCall>();
        if (!call || !targets_.count(call->name)) {
            if (call && cfg_.full) {
                if (p_.find_oracle(call->name))
                    throw std::runtime_error("oracle synthesis unsupported: '" + call->name + "'");
                const auto* g = p_.find_gate(call->name);
                if (g && g->opaque)
                    throw std::runtime_error("cannot inline opaque gate '" + call->name + "'");
            }
            return {s};
        }
        const FlatGate& h = flat_.at(call->name);

        std::vector<Stmt> body;
        splice_call(*call, h, 0, 0, body);

        // bind dirty slots: idle program qubits first, fresh pool slots after
        std::int64_t overflow = 0;
        std::vector<Arg> dirty_bind;
        if (h.dirty_slots > 0) {
            auto idle = idle_qubits(*call);
            for (std::int64_t k = 0; k < h.dirty_slots; ++k) {
                if (static_cast<std::size_t>(k) < idle.size()) {
                    dirty_bind.push_back(idle[k]);
                } else {
                    dirty_bind.push_back(Arg{kCleanSlot, h.clean_slots + overflow, {}});
                    ++overflow;
                }
            }
        }
        pool = std::max(pool, h.clean_slots + overflow);
        if (!dirty_bind.empty())
            for (auto& stmt : body)
                bind_dirty(stmt, dirty_bind);
        return body;
    }

    // Program qubits usable as dirty ancillas for this application: declared
    // qubits that appear in no main-body statement and are not arguments of
    // the call itself, in declaration order.
    std::vector<Arg> idle_qubits(const GateCall& call) const {
        std::set<std::string> busy;
        for (const auto* s : p_.main_statements())
            for (const auto& q : used_qubit_names(*s))
                busy.insert(q);
        for (const auto& a : call.qargs)
            busy.insert(a.str());
        std::vector<Arg> idle;
        for (const auto* r : p_.qregs())
            for (std::int64_t i = 0; i < r->size; ++i) {
                Arg a{r->name, i, {}};
                if (!busy.count(a.str()))
                    idle.push_back(a);
            }
        return idle;
    }

    static std::vector<std::string> used_qubit_names(const Stmt& s) {
        std::vector<std::string> names;
        if (const auto* g = s.as<GateCall>()) {
            for (const auto& a : g->qargs)
                names.push_back(a.str());
        } else if (const auto* m = s.as<MeasureStmt>()) {
            names.push_back(m->qubit.str());
        } else if (const auto* r = s.as<ResetStmt>()) {
            names.push_back(r->target.str());
        } else if (const auto* b = s.as<BarrierStmt>()) {
            for (const auto& a : b->args)
                names.push_back(a.str());
        } else if (const auto* i = s.as<IfStmt>()) {
            return used_qubit_names(*i->body);
        }
        return names;
    }

    static void bind_dirty(Stmt& s, const std::vector<Arg>& bind) {
        if (auto* g = s.as<GateCall>()) {
            for (auto& a : g->qargs)
                if (a.reg == kDirtySlot)
                    a = bind[*a.index];
        } else if (auto* b = s.as<BarrierStmt>()) {
            for (auto& a : b->args)
                if (a.reg == kDirtySlot)
                    a = bind[*a.index];
        }
    }

    // ---- pool naming -------------------------------------------------------

    std::string pool_name() const {
        std::string name = cfg_.ancilla_prefix;
        int suffix = 0;
        while (p_.find_register(name))
            name = cfg_.ancilla_prefix + std::to_string(++suffix);
        return name;
    }

    void rename_slots(TopLevel& it, const std::string& pool) const {
        auto* s = it.as<Stmt>();
        if (!s)
            return;
        rename_stmt(*s, pool);
    }

    static void rename_stmt(Stmt& s, const std::string& pool) {
        if (auto* g = s.as<GateCall>()) {
            for (auto& a : g->qargs)
                if (a.reg == kCleanSlot)
                    a.reg = pool;
        } else if (auto* b = s.as<BarrierStmt>()) {
            for (auto& a : b->args)
                if (a.reg == kCleanSlot)
                    a.reg = pool;
        } else if (auto* i = s.as<IfStmt>()) {
            Stmt body = *i->body;
            rename_stmt(body, pool);
            i->body = std::make_shared<const Stmt>(std::move(body));
        }
    }
};

std::vector<std::string> full_callgraph_order(const Program& p) {
    std::vector<std::string> order;
    std::map<std::string, int> state; // 0 new, 1 visiting, 2 done
    std::function<void(const GateDecl*)> visit = [&](const GateDecl* g) {
        int& st = state[g->name];
        if (st == 2)
            return;
        if (st == 1)
            throw std::runtime_error("recursive gate definitions involving '" + g->name + "'");
        st = 1;
        for (const auto& s : g->body)
            if (const auto* call = s.as<GateCall>())
                if (const auto* callee = p.find_gate(call->name)) {
                    if (callee->name == g->name)
                        throw std::runtime_error("recursive gate definitions involving '" +
                                                 g->name + "'");
                    visit(callee);
                }
        st = 2;
        order.push_back(g->name);
    };
    for (const auto& it : p.items)
        if (const auto* g = it.as<GateDecl>())
            visit(g);
    return order;
}

} // namespace

InlineConfig default_inline_config() {
    InlineConfig cfg;
    for (const auto& n : qelib1_gate_names())
        cfg.overrides.insert(n);
    return cfg;
}

std::vector<std::string> callgraph_order(const Program& p) {
    // report only user declarations, library gates are ambient
    std::vector<std::string> user_order;
    for (const auto& n : full_callgraph_order(p))
        if (const auto* g = p.find_gate(n); g && !g->from_include)
            user_order.push_back(n);
    return user_order;
}

Program inline_program(const Program& p, const InlineConfig& cfg) {
    return Inliner(p, cfg).run();
}

} // namespace casq
