#include "casq/desugar.hpp"

namespace casq {

namespace {

struct RegInfo {
    bool is_reg;
    std::int64_t size;
};

class Desugarer {
  public:
    explicit Desugarer(const Program& p) : p_(p) {}

    Program run() {
        Program out;
        out.includes = p_.includes;
        for (const auto& it : p_.items) {
            if (const auto* g = it.as<GateDecl>(); g && !g->from_include && !g->opaque) {
                GateDecl copy = *g;
                copy.body.clear();
                for (const auto& s : g->body)
                    expand_body_stmt(*g, s, copy.body);
                out.items.push_back(TopLevel{it.pos, std::move(copy)});
            } else if (const auto* s = it.as<Stmt>()) {
                std::vector<Stmt> expanded;
                expand_stmt(*s, expanded);
                for (auto& e : expanded)
                    out.items.push_back(TopLevel{it.pos, std::move(e)});
            } else {
                out.items.push_back(it);
            }
        }
        return out;
    }

  private:
    const Program& p_;

    // Size of the broadcast for a statement's args; 0 means scalar.
    std::int64_t reg_size(const Arg& a, bool classical_ok = false) const {
        if (a.indexed())
            return 0;
        if (const auto* r = p_.find_register(a.reg); r && (r->quantum || classical_ok))
            return r->size;
        return 0;
    }

    static Arg at(const Arg& a, std::int64_t i) {
        if (a.indexed())
            return a;
        Arg r = a;
        r.index = i;
        return r;
    }

    void expand_stmt(const Stmt& s, std::vector<Stmt>& out) const {
        if (const auto* g = s.as<GateCall>()) {
            std::int64_t n = 0;
            for (const auto& a : g->qargs)
                n = std::max(n, reg_size(a));
            if (n == 0) {
                out.push_back(s);
                return;
            }
            for (std::int64_t i = 0; i < n; ++i) {
                GateCall c = *g;
                for (auto& a : c.qargs)
                    a = at(a, i);
                out.push_back(Stmt{s.pos, std::move(c)});
            }
        } else if (const auto* m = s.as<MeasureStmt>()) {
            std::int64_t n = std::max(reg_size(m->qubit), reg_size(m->bit, true));
            if (n == 0) {
                out.push_back(s);
                return;
            }
            for (std::int64_t i = 0; i < n; ++i)
                out.push_back(Stmt{s.pos, MeasureStmt{at(m->qubit, i), at(m->bit, i)}});
        } else if (const auto* r = s.as<ResetStmt>()) {
            std::int64_t n = reg_size(r->target);
            if (n == 0) {
                out.push_back(s);
                return;
            }
            for (std::int64_t i = 0; i < n; ++i)
                out.push_back(Stmt{s.pos, ResetStmt{at(r->target, i)}});
        } else if (const auto* b = s.as<BarrierStmt>()) {
            // barriers keep their fence extent; register args flatten in place
            BarrierStmt nb;
            for (const auto& a : b->args) {
                std::int64_t n = reg_size(a);
                if (n == 0)
                    nb.args.push_back(a);
                else
                    for (std::int64_t i = 0; i < n; ++i)
                        nb.args.push_back(at(a, i));
            }
            out.push_back(Stmt{s.pos, std::move(nb)});
        } else if (const auto* i = s.as<IfStmt>()) {
            std::vector<Stmt> inner;
            expand_stmt(*i->body, inner);
            for (auto& b : inner)
                out.push_back(Stmt{s.pos, IfStmt{i->creg, i->value,
                                                 std::make_shared<const Stmt>(std::move(b))}});
        } else {
            out.push_back(s);
        }
    }

    // Inside gate bodies the only broadcastable references are local
    // ancilla registers.
    void expand_body_stmt(const GateDecl& g, const Stmt& s, std::vector<Stmt>& out) const {
        const auto* call = s.as<GateCall>();
        if (!call) {
            out.push_back(s);
            return;
        }
        auto anc_size = [&](const Arg& a) -> std::int64_t {
            if (a.indexed())
                return 0;
            for (const auto& anc : g.ancillas)
                if (anc.name == a.reg)
                    return anc.size;
            return 0;
        };
        std::int64_t n = 0;
        for (const auto& a : call->qargs)
            n = std::max(n, anc_size(a));
        if (n == 0) {
            out.push_back(s);
            return;
        }
        for (std::int64_t i = 0; i < n; ++i) {
            GateCall c = *call;
            for (auto& a : c.qargs)
                if (anc_size(a) > 0)
                    a = at(a, i);
            out.push_back(Stmt{s.pos, std::move(c)});
        }
    }
};

} // namespace

Program desugar(const Program& p) { return Desugarer(p).run(); }

} // namespace casq
