#pragma once

#include <set>
#include <string>
#include <vector>

#include "casq/ast.hpp"

namespace casq {

struct InlineConfig {
    /// Gate names never inlined. Ignored when full is set.
    std::set<std::string> overrides;
    /// Reduce everything to U/CX primitives.
    bool full = false;
    /// Name prefix for the hoisted global ancilla register.
    std::string ancilla_prefix = "anc";
};

/// Default configuration: standard-library gates stay boxed.
InlineConfig default_inline_config();

/// Replace gate applications by their bodies with formal-to-actual
/// substitution. Local ancillas are satisfied from a shared pool and hoisted
/// into one global register at the top of the program; dirty ancillas bind
/// to idle program qubits when available. Throws std::runtime_error on
/// recursive definitions and on oracle/opaque gates that must be expanded.
Program inline_program(const Program& p, const InlineConfig& cfg);

/// User gate declarations in dependency (topological) order; throws on
/// cycles naming the offending gates.
std::vector<std::string> callgraph_order(const Program& p);

} // namespace casq
