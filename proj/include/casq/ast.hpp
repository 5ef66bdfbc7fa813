#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "casq/angle.hpp"

namespace casq {

struct Position {
    int line = 0;
    int col = 0;
};

// ---------------------------------------------------------------------------
// Angle expressions
// ---------------------------------------------------------------------------

struct AngleExpr;
using AngleExprPtr = std::shared_ptr<const AngleExpr>;

/// Expression tree over pi, integer and floating literals, identifiers
/// (gate parameters), +, -, *, /, unary - and the usual unary functions.
/// Subtrees are immutable and shared, so copying programs is cheap.
struct AngleExpr {
    enum class Kind { Pi, Int, Float, Ident, Neg, Add, Sub, Mul, Div, Func };
    Kind kind;
    std::int64_t ival = 0;
    double fval = 0.0;
    std::string name; // identifier or function name
    AngleExprPtr lhs, rhs;

    static AngleExprPtr pi();
    static AngleExprPtr integer(std::int64_t v);
    static AngleExprPtr floating(double v);
    static AngleExprPtr ident(std::string n);
    static AngleExprPtr neg(AngleExprPtr e);
    static AngleExprPtr binary(Kind k, AngleExprPtr l, AngleExprPtr r);
    static AngleExprPtr func(std::string n, AngleExprPtr arg);

    /// From an exact or float Angle, in canonical form (e.g. 3*pi/4, -pi/2).
    static AngleExprPtr from_angle(const Angle& a);

    /// Constant-fold; empty if the expression references an unbound name.
    std::optional<Angle> eval() const;

    /// Substitute identifiers by expressions (used by the inliner).
    static AngleExprPtr substitute(const AngleExprPtr& e,
                                   const std::map<std::string, AngleExprPtr>& bind);

    static bool equal(const AngleExprPtr& a, const AngleExprPtr& b);
};

// ---------------------------------------------------------------------------
// Arguments and statements
// ---------------------------------------------------------------------------

/// A quantum or classical argument: a bare register/parameter reference or
/// an indexed reference reg[k].
struct Arg {
    std::string reg;
    std::optional<std::int64_t> index;
    Position pos;

    bool indexed() const { return index.has_value(); }
    bool same(const Arg& o) const { return reg == o.reg && index == o.index; }
    std::string str() const;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

/// Gate application; `name` may be the builtin U or CX.
struct GateCall {
    std::string name;
    std::vector<AngleExprPtr> cargs;
    std::vector<Arg> qargs;
};

struct MeasureStmt {
    Arg qubit;
    Arg bit;
};

struct ResetStmt {
    Arg target;
};

struct BarrierStmt {
    std::vector<Arg> args;
};

struct IfStmt {
    std::string creg;
    std::int64_t value = 0;
    StmtPtr body; // single quantum statement per the grammar
};

struct Stmt {
    Position pos;
    std::variant<GateCall, MeasureStmt, ResetStmt, BarrierStmt, IfStmt> node;

    template <class T> const T* as() const { return std::get_if<T>(&node); }
    template <class T> T* as() { return std::get_if<T>(&node); }
};

Stmt make_gate(std::string name, std::vector<AngleExprPtr> cargs, std::vector<Arg> qargs,
               Position pos = {});

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

struct RegisterDecl {
    bool quantum = true;
    std::string name;
    std::int64_t size = 0;
};

/// Local ancilla declaration inside a gate body (clean or dirty).
struct AncillaDecl {
    bool dirty = false;
    std::string name;
    std::int64_t size = 0;
};

struct GateDecl {
    std::string name;
    std::vector<std::string> cparams;
    std::vector<std::string> qparams;
    std::vector<AncillaDecl> ancillas;
    std::vector<Stmt> body;
    bool opaque = false;
    bool from_include = false;
};

struct OracleDecl {
    std::string name;
    std::vector<std::string> params;
    std::string file;
    bool from_include = false;
};

struct TopLevel {
    Position pos;
    std::variant<RegisterDecl, GateDecl, OracleDecl, Stmt> node;

    template <class T> const T* as() const { return std::get_if<T>(&node); }
    template <class T> T* as() { return std::get_if<T>(&node); }
};

// ---------------------------------------------------------------------------
// Program
// ---------------------------------------------------------------------------

struct Program {
    std::vector<std::string> includes;
    std::vector<TopLevel> items;

    const GateDecl* find_gate(const std::string& name) const;
    const OracleDecl* find_oracle(const std::string& name) const;
    const RegisterDecl* find_register(const std::string& name) const;

    /// Quantum registers in declaration order.
    std::vector<const RegisterDecl*> qregs() const;
    std::vector<const RegisterDecl*> cregs() const;
    std::int64_t total_qubits() const;

    /// Flattened address of an indexed qubit reference, by declaration order.
    std::int64_t qubit_address(const Arg& a) const;

    /// Main-body statements (skipping declarations), in order.
    std::vector<const Stmt*> main_statements() const;
};

// ---------------------------------------------------------------------------
// Traversal and splicing
// ---------------------------------------------------------------------------

/// Pre-order visitor over every node, including gate bodies and if bodies.
class Visitor {
  public:
    virtual ~Visitor() = default;
    virtual void on_register(const RegisterDecl&) {}
    virtual void on_gate_decl(const GateDecl&) {}
    virtual void on_oracle(const OracleDecl&) {}
    virtual void on_gate_call(const GateCall&, const Stmt&) {}
    virtual void on_measure(const MeasureStmt&, const Stmt&) {}
    virtual void on_reset(const ResetStmt&, const Stmt&) {}
    virtual void on_barrier(const BarrierStmt&, const Stmt&) {}
    virtual void on_if(const IfStmt&, const Stmt&) {}
};

void traverse(const Program& p, Visitor& v);

/// Statement rewriter: return a replacement list to splice in place of the
/// statement, or nullopt to keep it. Applied to the main body and, when
/// `into_bodies` is set, to user gate bodies as well.
using StmtRewriter = std::function<std::optional<std::vector<Stmt>>(const Stmt&)>;

Program splice_statements(const Program& p, const StmtRewriter& f, bool into_bodies = false);

/// Structural equality ignoring source positions.
bool structurally_equal(const Program& a, const Program& b);
bool structurally_equal(const Stmt& a, const Stmt& b);

/// Qubits touched by a statement, as flattened addresses (requires a
/// desugared statement; if bodies are resolved recursively).
std::vector<std::int64_t> stmt_qubits(const Program& p, const Stmt& s);

} // namespace casq
