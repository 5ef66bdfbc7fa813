#pragma once

#include "casq/ast.hpp"

namespace casq {

/// Cancel pairs of gates that are adjacent in the program dependence graph
/// and mutually inverse. With fixpoint set, sweeps repeat until no pair
/// remains; otherwise a single pass runs. Applies to the main body and to
/// user gate bodies.
Program simplify(const Program& p, bool fixpoint = true);

/// True iff the two statements are inverse gate applications on identical
/// qubits (self-inverse gates, s/sdg, t/tdg, and rx/ry/rz/u1 pairs with
/// negated angles).
bool inverse_gates(const Stmt& a, const Stmt& b);

} // namespace casq
