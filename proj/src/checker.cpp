#include "casq/checker.hpp"

#include <map>
#include <set>

namespace casq {

namespace {

struct Scope {
    std::map<std::string, const RegisterDecl*> registers;
    std::map<std::string, const GateDecl*> gates;
    std::map<std::string, const OracleDecl*> oracles;
};

class Checker {
  public:
    explicit Checker(const Program& p) : p_(p) {}

    std::vector<Diagnostic> run() {
        for (const auto& it : p_.items) {
            if (const auto* r = it.as<RegisterDecl>())
                declare_register(it.pos, *r);
            else if (const auto* g = it.as<GateDecl>())
                declare_gate(it.pos, *g);
            else if (const auto* o = it.as<OracleDecl>())
                declare_oracle(it.pos, *o);
            else if (const auto* s = it.as<Stmt>())
                check_stmt(*s);
        }
        return std::move(diags_);
    }

  private:
    const Program& p_;
    Scope scope_;
    std::vector<Diagnostic> diags_;

    void error(Position pos, std::string msg) { diags_.push_back({pos, std::move(msg)}); }

    // Registers live in their own namespace; gates and oracles share one.
    bool gate_name_taken(const std::string& n) const {
        return scope_.gates.count(n) || scope_.oracles.count(n);
    }

    void declare_register(Position pos, const RegisterDecl& r) {
        if (scope_.registers.count(r.name))
            error(pos, "redeclaration of '" + r.name + "'");
        if (r.size < 1)
            error(pos, "register '" + r.name + "' must have positive size");
        scope_.registers[r.name] = &r;
    }

    void declare_oracle(Position pos, const OracleDecl& o) {
        if (gate_name_taken(o.name))
            error(pos, "redeclaration of '" + o.name + "'");
        std::set<std::string> seen(o.params.begin(), o.params.end());
        if (seen.size() != o.params.size())
            error(pos, "duplicate parameter name in oracle '" + o.name + "'");
        scope_.oracles[o.name] = &o;
    }

    void declare_gate(Position pos, const GateDecl& g) {
        if (gate_name_taken(g.name) || g.name == "U" || g.name == "CX")
            error(pos, "redeclaration of '" + g.name + "'");
        std::set<std::string> names;
        for (const auto& n : g.cparams)
            if (!names.insert(n).second)
                error(pos, "duplicate parameter '" + n + "' in gate '" + g.name + "'");
        for (const auto& n : g.qparams)
            if (!names.insert(n).second)
                error(pos, "duplicate parameter '" + n + "' in gate '" + g.name + "'");
        std::map<std::string, const AncillaDecl*> ancillas;
        for (const auto& a : g.ancillas) {
            if (names.count(a.name) || ancillas.count(a.name))
                error(pos, "duplicate ancilla '" + a.name + "' in gate '" + g.name + "'");
            if (a.size < 1)
                error(pos, "ancilla '" + a.name + "' must have positive size");
            ancillas[a.name] = &a;
        }
        if (!g.opaque)
            for (const auto& s : g.body)
                check_body_stmt(g, ancillas, s);
        scope_.gates[g.name] = &g;
    }

    // ---- gate bodies -----------------------------------------------------

    void check_body_stmt(const GateDecl& g, const std::map<std::string, const AncillaDecl*>& anc,
                         const Stmt& s) {
        if (const auto* b = s.as<BarrierStmt>()) {
            for (const auto& a : b->args)
                check_body_arg(g, anc, s.pos, a);
            return;
        }
        const auto* call = s.as<GateCall>();
        if (!call) {
            error(s.pos, "statement not allowed inside a gate body");
            return;
        }
        check_call_shape(s.pos, *call, /*in_body=*/true, &g);
        std::set<std::string> used;
        for (const auto& a : call->qargs) {
            check_body_arg(g, anc, s.pos, a);
            std::string key = a.str();
            if (!used.insert(key).second)
                error(s.pos, "repeated qubit '" + key + "' in application of '" + call->name + "'");
            // a bare ancilla register overlaps any indexed use of it
            if (!a.indexed() && anc.count(a.reg))
                for (const auto& o : call->qargs)
                    if (&o != &a && o.reg == a.reg)
                        error(s.pos, "repeated qubit register '" + a.reg + "' in application");
        }
        for (const auto& e : call->cargs)
            check_expr(s.pos, e, &g);
    }

    void check_body_arg(const GateDecl& g, const std::map<std::string, const AncillaDecl*>& anc,
                        Position pos, const Arg& a) {
        for (const auto& q : g.qparams)
            if (q == a.reg) {
                if (a.indexed())
                    error(pos, "gate parameter '" + a.reg + "' cannot be indexed");
                return;
            }
        auto it = anc.find(a.reg);
        if (it != anc.end()) {
            if (a.indexed() && (*a.index < 0 || *a.index >= it->second->size))
                error(pos, "index out of bounds for ancilla '" + a.reg + "'");
            return;
        }
        error(pos, "unknown qubit '" + a.reg + "' in gate '" + g.name + "'");
    }

    // ---- main body --------------------------------------------------------

    void check_stmt(const Stmt& s) {
        if (const auto* g = s.as<GateCall>()) {
            check_main_call(s.pos, *g);
        } else if (const auto* m = s.as<MeasureStmt>()) {
            const auto* q = resolve(s.pos, m->qubit, /*quantum=*/true);
            const auto* c = resolve(s.pos, m->bit, /*quantum=*/false);
            if (q && c && !m->qubit.indexed() && !m->bit.indexed() && q->size != c->size)
                error(s.pos, "measure register length mismatch: " + std::to_string(q->size) +
                                 " vs " + std::to_string(c->size));
            if (q && c && (m->qubit.indexed() != m->bit.indexed()) && q->size != 1 && c->size != 1)
                error(s.pos, "measure mixes an indexed and a register operand");
        } else if (const auto* r = s.as<ResetStmt>()) {
            resolve(s.pos, r->target, /*quantum=*/true);
        } else if (const auto* b = s.as<BarrierStmt>()) {
            std::set<std::string> seen;
            for (const auto& a : b->args) {
                resolve(s.pos, a, /*quantum=*/true);
                if (!seen.insert(a.str()).second)
                    error(s.pos, "repeated argument '" + a.str() + "' in barrier");
            }
        } else if (const auto* i = s.as<IfStmt>()) {
            auto it = scope_.registers.find(i->creg);
            if (it == scope_.registers.end() || it->second->quantum)
                error(s.pos, "'" + i->creg + "' is not a declared classical register");
            else if (i->value < 0 ||
                     (it->second->size < 63 && (i->value >> it->second->size) != 0))
                error(s.pos, "condition value out of range for '" + i->creg + "'");
            if (i->body)
                check_stmt(*i->body);
        }
    }

    void check_main_call(Position pos, const GateCall& call) {
        check_call_shape(pos, call, /*in_body=*/false, nullptr);
        std::int64_t broadcast = -1; // register length shared by all register args
        std::set<std::string> seen_regs;
        bool repeated = false;
        for (const auto& a : call.qargs) {
            const auto* r = resolve(pos, a, /*quantum=*/true);
            if (!r)
                continue;
            if (!a.indexed()) {
                if (broadcast == -1)
                    broadcast = r->size;
                else if (broadcast != r->size)
                    error(pos, "uniform gate register length mismatch in '" + call.name + "': " +
                                   std::to_string(broadcast) + " vs " + std::to_string(r->size));
            }
            // overlap: identical args, or the same register used twice with
            // at least one bare (broadcast) reference
            for (const auto& o : call.qargs) {
                if (&o == &a)
                    break;
                if (o.reg == a.reg && (!o.indexed() || !a.indexed() || *o.index == *a.index))
                    repeated = true;
            }
            seen_regs.insert(a.reg);
        }
        if (repeated)
            error(pos, "repeated qubit in application of '" + call.name + "'");
        for (const auto& e : call.cargs)
            check_expr(pos, e, nullptr);
    }

    void check_call_shape(Position pos, const GateCall& call, bool in_body,
                          const GateDecl* enclosing) {
        std::size_t want_c = 0, want_q = 0;
        if (call.name == "U") {
            want_c = 3;
            want_q = 1;
        } else if (call.name == "CX") {
            want_c = 0;
            want_q = 2;
        } else if (const auto* g = lookup_gate(call.name, in_body, enclosing)) {
            want_c = g->cparams.size();
            want_q = g->qparams.size();
        } else if (const auto* o = lookup_oracle(call.name)) {
            want_c = 0;
            want_q = o->params.size();
        } else {
            error(pos, "undeclared gate '" + call.name + "'");
            return;
        }
        if (call.cargs.size() != want_c)
            error(pos, "gate '" + call.name + "' expects " + std::to_string(want_c) +
                           " angle argument(s), got " + std::to_string(call.cargs.size()));
        if (call.qargs.size() != want_q)
            error(pos, "gate '" + call.name + "' expects " + std::to_string(want_q) +
                           " qubit argument(s), got " + std::to_string(call.qargs.size()));
    }

    const GateDecl* lookup_gate(const std::string& name, bool in_body,
                                const GateDecl* enclosing) const {
        auto it = scope_.gates.find(name);
        if (it != scope_.gates.end())
            return it->second;
        // a gate body may not call the gate being declared (no recursion)
        (void)in_body;
        (void)enclosing;
        return nullptr;
    }

    const OracleDecl* lookup_oracle(const std::string& name) const {
        auto it = scope_.oracles.find(name);
        return it == scope_.oracles.end() ? nullptr : it->second;
    }

    const RegisterDecl* resolve(Position pos, const Arg& a, bool quantum) {
        auto it = scope_.registers.find(a.reg);
        if (it == scope_.registers.end()) {
            error(pos, "undeclared register '" + a.reg + "'");
            return nullptr;
        }
        const auto* r = it->second;
        if (r->quantum != quantum) {
            error(pos, std::string("'") + a.reg + "' is not a " +
                           (quantum ? "quantum" : "classical") + " register");
            return nullptr;
        }
        if (a.indexed() && (*a.index < 0 || *a.index >= r->size)) {
            error(pos, "index " + std::to_string(*a.index) + " out of bounds for '" + a.reg +
                           "[" + std::to_string(r->size) + "]'");
            return nullptr;
        }
        return r;
    }

    void check_expr(Position pos, const AngleExprPtr& e, const GateDecl* enclosing) {
        if (!e)
            return;
        if (e->kind == AngleExpr::Kind::Ident) {
            bool bound = false;
            if (enclosing)
                for (const auto& c : enclosing->cparams)
                    bound |= c == e->name;
            if (!bound)
                error(pos, "unbound identifier '" + e->name + "' in angle expression");
            return;
        }
        check_expr(pos, e->lhs, enclosing);
        check_expr(pos, e->rhs, enclosing);
    }
};

} // namespace

std::vector<Diagnostic> check(const Program& p) { return Checker(p).run(); }

std::string format_diagnostics(const std::vector<Diagnostic>& ds, const std::string& filename) {
    std::string out;
    for (const auto& d : ds) {
        out += filename + ":" + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.col) +
               ": error: " + d.message + "\n";
    }
    return out;
}

} // namespace casq
