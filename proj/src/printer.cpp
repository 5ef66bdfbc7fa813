#include "casq/printer.hpp"

#include <charconv>

namespace casq {

namespace {

int precedence(AngleExpr::Kind k) {
    switch (k) {
        case AngleExpr::Kind::Add:
        case AngleExpr::Kind::Sub:
            return 1;
        case AngleExpr::Kind::Mul:
        case AngleExpr::Kind::Div:
            return 2;
        case AngleExpr::Kind::Neg:
            return 3;
        default:
            return 4;
    }
}

void print_expr_rec(const AngleExpr& e, std::string& out, int parent_prec, bool right_side) {
    int prec = precedence(e.kind);
    bool need_parens = prec < parent_prec || (prec == parent_prec && right_side);
    if (need_parens)
        out += '(';
    switch (e.kind) {
        case AngleExpr::Kind::Pi:
            out += "pi";
            break;
        case AngleExpr::Kind::Int:
            out += std::to_string(e.ival);
            break;
        case AngleExpr::Kind::Float:
            out += format_double(e.fval);
            break;
        case AngleExpr::Kind::Ident:
            out += e.name;
            break;
        case AngleExpr::Kind::Neg:
            out += '-';
            print_expr_rec(*e.lhs, out, prec, /*right_side=*/true);
            break;
        case AngleExpr::Kind::Func:
            out += e.name;
            out += '(';
            print_expr_rec(*e.lhs, out, 0, false);
            out += ')';
            break;
        default: {
            const char* op = e.kind == AngleExpr::Kind::Add   ? "+"
                             : e.kind == AngleExpr::Kind::Sub ? "-"
                             : e.kind == AngleExpr::Kind::Mul ? "*"
                                                              : "/";
            print_expr_rec(*e.lhs, out, prec, false);
            out += op;
            print_expr_rec(*e.rhs, out, prec, true);
            break;
        }
    }
    if (need_parens)
        out += ')';
}

void print_stmt_rec(const Stmt& s, std::string& out) {
    if (const auto* g = s.as<GateCall>()) {
        out += g->name;
        if (!g->cargs.empty()) {
            out += '(';
            for (std::size_t i = 0; i < g->cargs.size(); ++i) {
                if (i)
                    out += ',';
                print_expr_rec(*g->cargs[i], out, 0, false);
            }
            out += ')';
        }
        out += ' ';
        for (std::size_t i = 0; i < g->qargs.size(); ++i) {
            if (i)
                out += ',';
            out += g->qargs[i].str();
        }
        out += ';';
    } else if (const auto* m = s.as<MeasureStmt>()) {
        out += "measure " + m->qubit.str() + " -> " + m->bit.str() + ";";
    } else if (const auto* r = s.as<ResetStmt>()) {
        out += "reset " + r->target.str() + ";";
    } else if (const auto* b = s.as<BarrierStmt>()) {
        out += "barrier";
        for (std::size_t i = 0; i < b->args.size(); ++i)
            out += (i ? "," : " ") + b->args[i].str();
        out += ';';
    } else if (const auto* i = s.as<IfStmt>()) {
        out += "if(" + i->creg + "==" + std::to_string(i->value) + ") ";
        print_stmt_rec(*i->body, out);
    }
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    // keep the token a real literal so it re-parses as one
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

std::string print_expr(const AngleExprPtr& e) {
    std::string out;
    print_expr_rec(*e, out, 0, false);
    return out;
}

std::string print_stmt(const Stmt& s) {
    std::string out;
    print_stmt_rec(s, out);
    return out;
}

std::string print(const Program& p) {
    std::string out = "OPENQASM 2.0;\n";
    for (const auto& inc : p.includes)
        out += "include \"" + inc + "\";\n";
    for (const auto& it : p.items) {
        if (const auto* r = it.as<RegisterDecl>()) {
            out += (r->quantum ? "qreg " : "creg ") + r->name + "[" +
                   std::to_string(r->size) + "];\n";
        } else if (const auto* g = it.as<GateDecl>()) {
            if (g->from_include)
                continue;
            out += g->opaque ? "opaque " : "gate ";
            out += g->name;
            if (!g->cparams.empty()) {
                out += '(';
                for (std::size_t i = 0; i < g->cparams.size(); ++i)
                    out += (i ? "," : "") + g->cparams[i];
                out += ')';
            }
            out += ' ';
            for (std::size_t i = 0; i < g->qparams.size(); ++i)
                out += (i ? "," : "") + g->qparams[i];
            if (g->opaque) {
                out += ";\n";
                continue;
            }
            out += " {\n";
            for (const auto& a : g->ancillas) {
                out += "  ";
                if (a.dirty)
                    out += "dirty ";
                out += "ancilla " + a.name + "[" + std::to_string(a.size) + "];\n";
            }
            for (const auto& s : g->body) {
                out += "  ";
                print_stmt_rec(s, out);
                out += '\n';
            }
            out += "}\n";
        } else if (const auto* o = it.as<OracleDecl>()) {
            if (o->from_include)
                continue;
            out += "oracle " + o->name + " ";
            for (std::size_t i = 0; i < o->params.size(); ++i)
                out += (i ? "," : "") + o->params[i];
            out += " { \"" + o->file + "\" }\n";
        } else if (const auto* s = it.as<Stmt>()) {
            print_stmt_rec(*s, out);
            out += '\n';
        }
    }
    return out;
}

} // namespace casq
