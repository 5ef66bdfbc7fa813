#include "casq/simplify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace casq {

namespace {

const std::set<std::string>& self_inverse() {
    static const std::set<std::string> s = {"h", "x", "y", "z", "cx", "cz", "cy",
                                            "ch", "ccx", "swap", "id", "CX"};
    return s;
}

bool negated_angles(const AngleExprPtr& a, const AngleExprPtr& b) {
    auto va = a->eval();
    auto vb = b->eval();
    if (va && vb)
        return (*va + *vb).zero();
    // symbolic arguments: compare structurally against the negation
    return AngleExpr::equal(AngleExpr::neg(a), b) || AngleExpr::equal(a, AngleExpr::neg(b));
}

std::vector<std::string> qarg_keys(const GateCall& g) {
    std::vector<std::string> keys;
    keys.reserve(g.qargs.size());
    for (const auto& a : g.qargs)
        keys.push_back(a.str());
    return keys;
}

std::vector<std::string> fence_keys(const Stmt& s) {
    if (const auto* b = s.as<BarrierStmt>()) {
        std::vector<std::string> qs;
        for (const auto& a : b->args)
            qs.push_back(a.str());
        return qs; // empty means "all qubits"
    }
    if (const auto* m = s.as<MeasureStmt>())
        return {m->qubit.str()};
    if (const auto* r = s.as<ResetStmt>())
        return {r->target.str()};
    if (const auto* i = s.as<IfStmt>())
        return fence_keys(*i->body);
    return {};
}

// One cancellation sweep; returns true if any pair was removed.
bool sweep(std::vector<Stmt>& stmts) {
    std::vector<bool> deleted(stmts.size(), false);
    std::map<std::string, std::vector<std::size_t>> open;
    bool barrier_all_seen = false;
    std::size_t barrier_all_index = 0;

    bool changed = false;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        const auto* g = stmts[i].as<GateCall>();
        if (!g) {
            if (const auto* b = stmts[i].as<BarrierStmt>(); b && b->args.empty()) {
                barrier_all_seen = true;
                barrier_all_index = i;
            }
            for (const auto& q : fence_keys(stmts[i]))
                open[q].push_back(i);
            continue;
        }
        auto qs = qarg_keys(*g);
        std::size_t cand = SIZE_MAX;
        bool viable = !qs.empty();
        for (const auto& q : qs) {
            auto it = open.find(q);
            std::size_t top;
            if (it == open.end() || it->second.empty()) {
                if (barrier_all_seen) {
                    viable = false;
                    break;
                }
                top = SIZE_MAX;
            } else {
                top = it->second.back();
                if (barrier_all_seen && top < barrier_all_index) {
                    viable = false;
                    break;
                }
            }
            if (top == SIZE_MAX) {
                viable = false;
                break;
            }
            if (cand == SIZE_MAX)
                cand = top;
            else if (cand != top)
                viable = false;
        }
        if (viable && cand != SIZE_MAX && !deleted[cand] &&
            inverse_gates(stmts[cand], stmts[i])) {
            const auto* cg = stmts[cand].as<GateCall>();
            if (cg && qarg_keys(*cg).size() == qs.size()) {
                for (const auto& q : qs)
                    open[q].pop_back();
                deleted[cand] = deleted[i] = true;
                changed = true;
                continue;
            }
        }
        for (const auto& q : qs)
            open[q].push_back(i);
    }

    if (changed) {
        std::vector<Stmt> kept;
        kept.reserve(stmts.size());
        for (std::size_t i = 0; i < stmts.size(); ++i)
            if (!deleted[i])
                kept.push_back(std::move(stmts[i]));
        stmts = std::move(kept);
    }
    return changed;
}

void simplify_list(std::vector<Stmt>& stmts, bool fixpoint) {
    while (sweep(stmts) && fixpoint) {
    }
}

} // namespace

bool inverse_gates(const Stmt& sa, const Stmt& sb) {
    const auto* a = sa.as<GateCall>();
    const auto* b = sb.as<GateCall>();
    if (!a || !b)
        return false;

    if (a->name == "swap" && b->name == "swap") {
        auto ka = qarg_keys(*a);
        auto kb = qarg_keys(*b);
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        return ka == kb;
    }
    if (a->qargs.size() != b->qargs.size())
        return false;
    for (std::size_t i = 0; i < a->qargs.size(); ++i)
        if (!a->qargs[i].same(b->qargs[i]))
            return false;
    if (a->name == b->name && self_inverse().count(a->name))
        return true;
    auto pair_of = [](const std::string& x, const std::string& y) {
        return (x == "s" && y == "sdg") || (x == "sdg" && y == "s") ||
               (x == "t" && y == "tdg") || (x == "tdg" && y == "t");
    };
    if (pair_of(a->name, b->name))
        return true;
    static const std::set<std::string> rotations = {"rx", "ry", "rz", "u1"};
    if (a->name == b->name && rotations.count(a->name) && a->cargs.size() == 1 &&
        b->cargs.size() == 1)
        return negated_angles(a->cargs[0], b->cargs[0]);
    return false;
}

Program simplify(const Program& p, bool fixpoint) {
    // simplify the main statement stream
    std::vector<Stmt> main;
    for (const auto* s : p.main_statements())
        main.push_back(*s);
    std::vector<Stmt> orig = main;
    simplify_list(main, fixpoint);

    // survivors form a subsequence of the original stream
    std::vector<bool> keep(orig.size(), false);
    std::size_t j = 0;
    for (std::size_t i = 0; i < orig.size() && j < main.size(); ++i)
        if (structurally_equal(orig[i], main[j])) {
            keep[i] = true;
            ++j;
        }

    Program out;
    out.includes = p.includes;
    std::size_t stmt_idx = 0;
    for (const auto& it : p.items) {
        if (it.as<Stmt>()) {
            if (keep[stmt_idx])
                out.items.push_back(it);
            ++stmt_idx;
        } else if (const auto* g = it.as<GateDecl>(); g && !g->from_include && !g->opaque) {
            GateDecl copy = *g;
            simplify_list(copy.body, fixpoint);
            out.items.push_back(TopLevel{it.pos, std::move(copy)});
        } else {
            out.items.push_back(it);
        }
    }
    return out;
}

} // namespace casq
