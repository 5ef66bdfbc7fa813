#include "casq/ast.hpp"

#include <cmath>
#include <stdexcept>

namespace casq {

// ---------------------------------------------------------------------------
// AngleExpr
// ---------------------------------------------------------------------------

namespace {

AngleExprPtr node(AngleExpr e) { return std::make_shared<const AngleExpr>(std::move(e)); }

// Intermediate constant-folding value: exact pi-multiple, plain rational, or
// float. Only +,-,* and / between compatible kinds stay symbolic.
struct Val {
    enum class K { PiFrac, Rational, Float } k;
    std::int64_t num = 0, den = 1;
    double f = 0.0;

    double as_double() const {
        switch (k) {
            case K::PiFrac:
                return M_PI * double(num) / double(den);
            case K::Rational:
                return double(num) / double(den);
            default:
                return f;
        }
    }
};

std::optional<Val> fold(const AngleExpr& e);

std::optional<Val> fold_bin(const AngleExpr& e) {
    auto l = fold(*e.lhs);
    auto r = fold(*e.rhs);
    if (!l || !r)
        return std::nullopt;
    using K = Val::K;
    auto flt = [&](double v) { return Val{K::Float, 0, 1, v}; };
    switch (e.kind) {
        case AngleExpr::Kind::Add:
        case AngleExpr::Kind::Sub: {
            std::int64_t sign = e.kind == AngleExpr::Kind::Add ? 1 : -1;
            if (l->k == r->k && l->k != K::Float)
                return Val{l->k, l->num * r->den + sign * r->num * l->den, l->den * r->den, 0};
            return flt(l->as_double() + sign * r->as_double());
        }
        case AngleExpr::Kind::Mul:
            if (l->k == K::Rational && r->k != K::Float)
                return Val{r->k, l->num * r->num, l->den * r->den, 0};
            if (r->k == K::Rational && l->k != K::Float)
                return Val{l->k, l->num * r->num, l->den * r->den, 0};
            return flt(l->as_double() * r->as_double());
        case AngleExpr::Kind::Div:
            if (r->k == K::Rational && r->num != 0 && l->k != K::Float)
                return Val{l->k, l->num * r->den, l->den * r->num, 0};
            return flt(l->as_double() / r->as_double());
        default:
            return std::nullopt;
    }
}

std::optional<Val> fold(const AngleExpr& e) {
    using K = Val::K;
    switch (e.kind) {
        case AngleExpr::Kind::Pi:
            return Val{K::PiFrac, 1, 1, 0};
        case AngleExpr::Kind::Int:
            return Val{K::Rational, e.ival, 1, 0};
        case AngleExpr::Kind::Float:
            return Val{K::Float, 0, 1, e.fval};
        case AngleExpr::Kind::Ident:
            return std::nullopt;
        case AngleExpr::Kind::Neg: {
            auto v = fold(*e.lhs);
            if (!v)
                return std::nullopt;
            if (v->k == K::Float)
                v->f = -v->f;
            else
                v->num = -v->num;
            return v;
        }
        case AngleExpr::Kind::Func: {
            auto v = fold(*e.lhs);
            if (!v)
                return std::nullopt;
            double x = v->as_double();
            double r;
            if (e.name == "sin")
                r = std::sin(x);
            else if (e.name == "cos")
                r = std::cos(x);
            else if (e.name == "tan")
                r = std::tan(x);
            else if (e.name == "exp")
                r = std::exp(x);
            else if (e.name == "ln")
                r = std::log(x);
            else if (e.name == "sqrt")
                r = std::sqrt(x);
            else
                return std::nullopt;
            return Val{K::Float, 0, 1, r};
        }
        default:
            return fold_bin(e);
    }
}

} // namespace

AngleExprPtr AngleExpr::pi() { return node({Kind::Pi, 0, 0, "", nullptr, nullptr}); }

AngleExprPtr AngleExpr::integer(std::int64_t v) {
    return node({Kind::Int, v, 0, "", nullptr, nullptr});
}

AngleExprPtr AngleExpr::floating(double v) { return node({Kind::Float, 0, v, "", nullptr, nullptr}); }

AngleExprPtr AngleExpr::ident(std::string n) {
    return node({Kind::Ident, 0, 0, std::move(n), nullptr, nullptr});
}

AngleExprPtr AngleExpr::neg(AngleExprPtr e) {
    // fold directly negated literals so -2.5 stays a single token
    if (e->kind == Kind::Float)
        return floating(-e->fval);
    if (e->kind == Kind::Int)
        return integer(-e->ival);
    return node({Kind::Neg, 0, 0, "", std::move(e), nullptr});
}

AngleExprPtr AngleExpr::binary(Kind k, AngleExprPtr l, AngleExprPtr r) {
    return node({k, 0, 0, "", std::move(l), std::move(r)});
}

AngleExprPtr AngleExpr::func(std::string n, AngleExprPtr arg) {
    return node({Kind::Func, 0, 0, std::move(n), std::move(arg), nullptr});
}

AngleExprPtr AngleExpr::from_angle(const Angle& a) {
    if (auto f = a.pi_fraction()) {
        auto [num, den] = *f;
        if (num == 0)
            return integer(0);
        bool negative = num < 0;
        std::int64_t n = negative ? -num : num;
        AngleExprPtr e = pi();
        if (n != 1)
            e = binary(Kind::Mul, integer(n), e);
        if (den != 1)
            e = binary(Kind::Div, e, integer(den));
        return negative ? neg(e) : e;
    }
    return floating(a.value());
}

std::optional<Angle> AngleExpr::eval() const {
    auto v = fold(*this);
    if (!v)
        return std::nullopt;
    switch (v->k) {
        case Val::K::PiFrac:
            return Angle::pi_frac(v->num, v->den);
        default:
            return Angle::radians(v->as_double());
    }
}

AngleExprPtr AngleExpr::substitute(const AngleExprPtr& e,
                                   const std::map<std::string, AngleExprPtr>& bind) {
    if (!e)
        return e;
    switch (e->kind) {
        case Kind::Ident: {
            auto it = bind.find(e->name);
            return it == bind.end() ? e : it->second;
        }
        case Kind::Pi:
        case Kind::Int:
        case Kind::Float:
            return e;
        default: {
            auto l = substitute(e->lhs, bind);
            auto r = substitute(e->rhs, bind);
            if (l == e->lhs && r == e->rhs)
                return e;
            AngleExpr c = *e;
            c.lhs = std::move(l);
            c.rhs = std::move(r);
            return node(std::move(c));
        }
    }
}

bool AngleExpr::equal(const AngleExprPtr& a, const AngleExprPtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    if (a->kind != b->kind || a->ival != b->ival || a->fval != b->fval || a->name != b->name)
        return false;
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

std::string Arg::str() const {
    if (index)
        return reg + "[" + std::to_string(*index) + "]";
    return reg;
}

Stmt make_gate(std::string name, std::vector<AngleExprPtr> cargs, std::vector<Arg> qargs,
               Position pos) {
    return Stmt{pos, GateCall{std::move(name), std::move(cargs), std::move(qargs)}};
}

// ---------------------------------------------------------------------------
// Program queries
// ---------------------------------------------------------------------------

const GateDecl* Program::find_gate(const std::string& name) const {
    for (const auto& it : items)
        if (const auto* g = it.as<GateDecl>(); g && g->name == name)
            return g;
    return nullptr;
}

const OracleDecl* Program::find_oracle(const std::string& name) const {
    for (const auto& it : items)
        if (const auto* o = it.as<OracleDecl>(); o && o->name == name)
            return o;
    return nullptr;
}

const RegisterDecl* Program::find_register(const std::string& name) const {
    for (const auto& it : items)
        if (const auto* r = it.as<RegisterDecl>(); r && r->name == name)
            return r;
    return nullptr;
}

std::vector<const RegisterDecl*> Program::qregs() const {
    std::vector<const RegisterDecl*> rs;
    for (const auto& it : items)
        if (const auto* r = it.as<RegisterDecl>(); r && r->quantum)
            rs.push_back(r);
    return rs;
}

std::vector<const RegisterDecl*> Program::cregs() const {
    std::vector<const RegisterDecl*> rs;
    for (const auto& it : items)
        if (const auto* r = it.as<RegisterDecl>(); r && !r->quantum)
            rs.push_back(r);
    return rs;
}

std::int64_t Program::total_qubits() const {
    std::int64_t n = 0;
    for (const auto* r : qregs())
        n += r->size;
    return n;
}

std::int64_t Program::qubit_address(const Arg& a) const {
    std::int64_t base = 0;
    for (const auto* r : qregs()) {
        if (r->name == a.reg)
            return base + a.index.value_or(0);
        base += r->size;
    }
    throw std::out_of_range("unknown quantum register: " + a.reg);
}

std::vector<const Stmt*> Program::main_statements() const {
    std::vector<const Stmt*> ss;
    for (const auto& it : items)
        if (const auto* s = it.as<Stmt>())
            ss.push_back(s);
    return ss;
}

// ---------------------------------------------------------------------------
// Traversal
// ---------------------------------------------------------------------------

namespace {

void visit_stmt(const Stmt& s, Visitor& v) {
    if (const auto* g = s.as<GateCall>())
        v.on_gate_call(*g, s);
    else if (const auto* m = s.as<MeasureStmt>())
        v.on_measure(*m, s);
    else if (const auto* r = s.as<ResetStmt>())
        v.on_reset(*r, s);
    else if (const auto* b = s.as<BarrierStmt>())
        v.on_barrier(*b, s);
    else if (const auto* i = s.as<IfStmt>()) {
        v.on_if(*i, s);
        if (i->body)
            visit_stmt(*i->body, v);
    }
}

} // namespace

void traverse(const Program& p, Visitor& v) {
    for (const auto& it : p.items) {
        if (const auto* r = it.as<RegisterDecl>())
            v.on_register(*r);
        else if (const auto* g = it.as<GateDecl>()) {
            if (g->from_include)
                continue; // library declarations are ambient, not user structure
            v.on_gate_decl(*g);
            for (const auto& s : g->body)
                visit_stmt(s, v);
        } else if (const auto* o = it.as<OracleDecl>())
            v.on_oracle(*o);
        else if (const auto* s = it.as<Stmt>())
            visit_stmt(*s, v);
    }
}

Program splice_statements(const Program& p, const StmtRewriter& f, bool into_bodies) {
    Program out;
    out.includes = p.includes;
    auto rewrite_list = [&](const std::vector<Stmt>& in) {
        std::vector<Stmt> res;
        for (const auto& s : in) {
            if (auto repl = f(s))
                for (auto& r : *repl)
                    res.push_back(std::move(r));
            else
                res.push_back(s);
        }
        return res;
    };
    for (const auto& it : p.items) {
        if (const auto* s = it.as<Stmt>()) {
            if (auto repl = f(*s)) {
                for (auto& r : *repl)
                    out.items.push_back(TopLevel{it.pos, std::move(r)});
                continue;
            }
            out.items.push_back(it);
        } else if (const auto* g = it.as<GateDecl>(); g && into_bodies && !g->from_include) {
            GateDecl copy = *g;
            copy.body = rewrite_list(g->body);
            out.items.push_back(TopLevel{it.pos, std::move(copy)});
        } else {
            out.items.push_back(it);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

namespace {

bool args_equal(const std::vector<Arg>& a, const std::vector<Arg>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].same(b[i]))
            return false;
    return true;
}

bool exprs_equal(const std::vector<AngleExprPtr>& a, const std::vector<AngleExprPtr>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!AngleExpr::equal(a[i], b[i]))
            return false;
    return true;
}

} // namespace

bool structurally_equal(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index())
        return false;
    if (const auto* g = a.as<GateCall>()) {
        const auto* h = b.as<GateCall>();
        return g->name == h->name && exprs_equal(g->cargs, h->cargs) &&
               args_equal(g->qargs, h->qargs);
    }
    if (const auto* m = a.as<MeasureStmt>()) {
        const auto* n = b.as<MeasureStmt>();
        return m->qubit.same(n->qubit) && m->bit.same(n->bit);
    }
    if (const auto* r = a.as<ResetStmt>())
        return r->target.same(b.as<ResetStmt>()->target);
    if (const auto* br = a.as<BarrierStmt>())
        return args_equal(br->args, b.as<BarrierStmt>()->args);
    if (const auto* i = a.as<IfStmt>()) {
        const auto* j = b.as<IfStmt>();
        if (i->creg != j->creg || i->value != j->value)
            return false;
        if (!i->body || !j->body)
            return i->body == j->body;
        return structurally_equal(*i->body, *j->body);
    }
    return false;
}

bool structurally_equal(const Program& a, const Program& b) {
    if (a.includes != b.includes || a.items.size() != b.items.size())
        return false;
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        const auto& x = a.items[i];
        const auto& y = b.items[i];
        if (x.node.index() != y.node.index())
            return false;
        if (const auto* r = x.as<RegisterDecl>()) {
            const auto* s = y.as<RegisterDecl>();
            if (r->quantum != s->quantum || r->name != s->name || r->size != s->size)
                return false;
        } else if (const auto* g = x.as<GateDecl>()) {
            const auto* h = y.as<GateDecl>();
            if (g->name != h->name || g->cparams != h->cparams || g->qparams != h->qparams ||
                g->opaque != h->opaque || g->from_include != h->from_include ||
                g->body.size() != h->body.size() || g->ancillas.size() != h->ancillas.size())
                return false;
            for (std::size_t k = 0; k < g->ancillas.size(); ++k) {
                const auto& p = g->ancillas[k];
                const auto& q = h->ancillas[k];
                if (p.dirty != q.dirty || p.name != q.name || p.size != q.size)
                    return false;
            }
            for (std::size_t k = 0; k < g->body.size(); ++k)
                if (!structurally_equal(g->body[k], h->body[k]))
                    return false;
        } else if (const auto* o = x.as<OracleDecl>()) {
            const auto* q = y.as<OracleDecl>();
            if (o->name != q->name || o->params != q->params || o->file != q->file)
                return false;
        } else if (const auto* s = x.as<Stmt>()) {
            if (!structurally_equal(*s, *y.as<Stmt>()))
                return false;
        }
    }
    return true;
}

std::vector<std::int64_t> stmt_qubits(const Program& p, const Stmt& s) {
    std::vector<std::int64_t> qs;
    auto add_arg = [&](const Arg& a) {
        std::int64_t base = 0;
        for (const auto* r : p.qregs()) {
            if (r->name == a.reg) {
                if (a.index)
                    qs.push_back(base + *a.index);
                else
                    for (std::int64_t i = 0; i < r->size; ++i)
                        qs.push_back(base + i);
                return;
            }
            base += r->size;
        }
    };
    if (const auto* g = s.as<GateCall>()) {
        for (const auto& a : g->qargs)
            add_arg(a);
    } else if (const auto* m = s.as<MeasureStmt>()) {
        add_arg(m->qubit);
    } else if (const auto* r = s.as<ResetStmt>()) {
        add_arg(r->target);
    } else if (const auto* b = s.as<BarrierStmt>()) {
        if (b->args.empty()) {
            for (std::int64_t q = 0; q < p.total_qubits(); ++q)
                qs.push_back(q);
        } else {
            for (const auto& a : b->args)
                add_arg(a);
        }
    } else if (const auto* i = s.as<IfStmt>()) {
        if (i->body)
            return stmt_qubits(p, *i->body);
    }
    return qs;
}

} // namespace casq
