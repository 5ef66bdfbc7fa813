#pragma once

// Random valid-program generator used by the round-trip fuzz harness and
// the pipeline property tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "casq/ast.hpp"
#include "casq/parser.hpp"

namespace astgen {

struct GenGate {
    std::string name;
    int cargs;
    int qargs;
};

inline casq::AngleExprPtr random_expr(std::mt19937& rng, const std::vector<std::string>& params,
                                      int depth = 0) {
    using casq::AngleExpr;
    std::uniform_int_distribution<int> pick(0, depth > 2 ? 4 : 9);
    switch (pick(rng)) {
        case 0:
            return AngleExpr::pi();
        case 1:
            return AngleExpr::integer(std::uniform_int_distribution<int>(0, 7)(rng));
        case 2: {
            double v = std::uniform_real_distribution<double>(-3.2, 3.2)(rng);
            return AngleExpr::floating(v);
        }
        case 3:
            if (!params.empty()) {
                std::uniform_int_distribution<std::size_t> pi(0, params.size() - 1);
                return AngleExpr::ident(params[pi(rng)]);
            }
            return AngleExpr::pi();
        case 4:
            return AngleExpr::binary(AngleExpr::Kind::Div, AngleExpr::pi(),
                                     AngleExpr::integer(1 + std::uniform_int_distribution<int>(
                                                                0, 6)(rng)));
        case 5:
            return AngleExpr::neg(random_expr(rng, params, depth + 1));
        case 6:
            return AngleExpr::binary(AngleExpr::Kind::Add, random_expr(rng, params, depth + 1),
                                     random_expr(rng, params, depth + 1));
        case 7:
            return AngleExpr::binary(AngleExpr::Kind::Mul, random_expr(rng, params, depth + 1),
                                     random_expr(rng, params, depth + 1));
        case 8:
            return AngleExpr::binary(AngleExpr::Kind::Sub, random_expr(rng, params, depth + 1),
                                     random_expr(rng, params, depth + 1));
        default:
            return AngleExpr::func("cos", random_expr(rng, params, depth + 1));
    }
}

/// A random program that passes check(): valid references, distinct qubits
/// per application, consistent uniform-gate lengths.
inline casq::Program random_program(std::mt19937& rng, bool allow_nonunitary = true) {
    using namespace casq;
    Program p;
    p.includes.push_back("qelib1.inc");
    {
        // pull in the standard library declarations
        Program lib = parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        p.items = lib.items;
    }

    std::uniform_int_distribution<int> d_nregs(1, 3);
    std::uniform_int_distribution<int> d_size(1, 4);
    int nregs = d_nregs(rng);
    std::vector<std::pair<std::string, std::int64_t>> qregs;
    for (int i = 0; i < nregs; ++i) {
        std::string name = "q" + std::to_string(i);
        std::int64_t size = d_size(rng);
        qregs.push_back({name, size});
        p.items.push_back(TopLevel{{}, RegisterDecl{true, name, size}});
    }
    std::vector<std::pair<std::string, std::int64_t>> cregs;
    int ncregs = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < ncregs; ++i) {
        std::string name = "c" + std::to_string(i);
        std::int64_t size = d_size(rng);
        cregs.push_back({name, size});
        p.items.push_back(TopLevel{{}, RegisterDecl{false, name, size}});
    }

    std::vector<GenGate> gates = {{"h", 0, 1},  {"x", 0, 1},   {"t", 0, 1},  {"sdg", 0, 1},
                                  {"rz", 1, 1}, {"u3", 3, 1},  {"cx", 0, 2}, {"cz", 0, 2},
                                  {"s", 0, 1},  {"ccx", 0, 3}, {"ry", 1, 1}};

    // a couple of user gate declarations
    int ndecls = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < ndecls; ++i) {
        GateDecl g;
        g.name = "ug" + std::to_string(i);
        int nc = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int k = 0; k < nc; ++k)
            g.cparams.push_back("p" + std::to_string(k));
        int nq = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int k = 0; k < nq; ++k)
            g.qparams.push_back("a" + std::to_string(k));
        int len = std::uniform_int_distribution<int>(1, 5)(rng);
        for (int k = 0; k < len; ++k) {
            std::uniform_int_distribution<std::size_t> pg(0, gates.size() - 1);
            GenGate gg = gates[pg(rng)];
            if (gg.qargs > nq)
                continue;
            GateCall call;
            call.name = gg.name;
            for (int c = 0; c < gg.cargs; ++c)
                call.cargs.push_back(random_expr(rng, g.cparams));
            std::vector<int> idx(nq);
            for (int q = 0; q < nq; ++q)
                idx[q] = q;
            std::shuffle(idx.begin(), idx.end(), rng);
            for (int q = 0; q < gg.qargs; ++q)
                call.qargs.push_back(Arg{g.qparams[idx[q]], std::nullopt, {}});
            g.body.push_back(Stmt{{}, std::move(call)});
        }
        gates.push_back({g.name, static_cast<int>(g.cparams.size()),
                         static_cast<int>(g.qparams.size())});
        p.items.push_back(TopLevel{{}, std::move(g)});
    }

    auto total_qubits = [&] {
        std::int64_t n = 0;
        for (auto& [_, s] : qregs)
            n += s;
        return n;
    }();

    int len = std::uniform_int_distribution<int>(3, 25)(rng);
    for (int i = 0; i < len; ++i) {
        std::uniform_int_distribution<std::size_t> pg(0, gates.size() - 1);
        GenGate gg = gates[pg(rng)];
        int kind = std::uniform_int_distribution<int>(0, 9)(rng);
        if (allow_nonunitary && kind == 0 && !cregs.empty()) {
            auto& qr = qregs[std::uniform_int_distribution<std::size_t>(0, qregs.size() - 1)(rng)];
            auto& cr = cregs[std::uniform_int_distribution<std::size_t>(0, cregs.size() - 1)(rng)];
            std::int64_t qi = std::uniform_int_distribution<std::int64_t>(0, qr.second - 1)(rng);
            std::int64_t ci = std::uniform_int_distribution<std::int64_t>(0, cr.second - 1)(rng);
            p.items.push_back(
                TopLevel{{}, Stmt{{}, MeasureStmt{Arg{qr.first, qi, {}}, Arg{cr.first, ci, {}}}}});
            continue;
        }
        if (allow_nonunitary && kind == 1) {
            auto& qr = qregs[std::uniform_int_distribution<std::size_t>(0, qregs.size() - 1)(rng)];
            std::int64_t qi = std::uniform_int_distribution<std::int64_t>(0, qr.second - 1)(rng);
            p.items.push_back(TopLevel{{}, Stmt{{}, ResetStmt{Arg{qr.first, qi, {}}}}});
            continue;
        }
        if (kind == 2) {
            BarrierStmt b;
            auto& qr = qregs[std::uniform_int_distribution<std::size_t>(0, qregs.size() - 1)(rng)];
            b.args.push_back(Arg{qr.first, std::nullopt, {}});
            p.items.push_back(TopLevel{{}, Stmt{{}, std::move(b)}});
            continue;
        }
        if (gg.qargs > total_qubits)
            continue;
        GateCall call;
        call.name = gg.name;
        for (int c = 0; c < gg.cargs; ++c)
            call.cargs.push_back(random_expr(rng, {}));
        if (kind == 3 && gg.qargs <= static_cast<int>(qregs.size())) {
            // uniform (register broadcast) form over same-size registers
            std::int64_t sz = -1;
            std::vector<std::string> used;
            bool ok = true;
            for (int q = 0; q < gg.qargs; ++q) {
                bool found = false;
                for (auto& [name, size] : qregs) {
                    bool taken = false;
                    for (auto& u : used)
                        taken |= u == name;
                    if (taken)
                        continue;
                    if (sz == -1 || size == sz) {
                        sz = size;
                        used.push_back(name);
                        call.qargs.push_back(Arg{name, std::nullopt, {}});
                        found = true;
                        break;
                    }
                }
                ok &= found;
            }
            if (ok) {
                Stmt s{{}, std::move(call)};
                if (allow_nonunitary && !cregs.empty() &&
                    std::uniform_int_distribution<int>(0, 6)(rng) == 0) {
                    auto& cr =
                        cregs[std::uniform_int_distribution<std::size_t>(0, cregs.size() - 1)(rng)];
                    s = Stmt{{},
                             IfStmt{cr.first, std::uniform_int_distribution<int>(0, 1)(rng),
                                    std::make_shared<const Stmt>(std::move(s))}};
                }
                p.items.push_back(TopLevel{{}, std::move(s)});
            }
            continue;
        }
        // indexed form: pick distinct flat qubits
        std::vector<std::int64_t> flat(total_qubits);
        for (std::int64_t q = 0; q < total_qubits; ++q)
            flat[q] = q;
        std::shuffle(flat.begin(), flat.end(), rng);
        for (int q = 0; q < gg.qargs; ++q) {
            std::int64_t addr = flat[q];
            for (auto& [name, size] : qregs) {
                if (addr < size) {
                    call.qargs.push_back(Arg{name, addr, {}});
                    break;
                }
                addr -= size;
            }
        }
        p.items.push_back(TopLevel{{}, Stmt{{}, std::move(call)}});
    }
    return p;
}

} // namespace astgen
