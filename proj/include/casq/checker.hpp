#pragma once

#include <string>
#include <vector>

#include "casq/ast.hpp"

namespace casq {

struct Diagnostic {
    Position pos;
    std::string message;
};

/// Semantic validation: declaration-before-use, arity and argument kinds,
/// index bounds, repeated qubits, uniform-gate register length agreement,
/// and name uniqueness. Returns an empty list for a valid program.
std::vector<Diagnostic> check(const Program& p);

std::string format_diagnostics(const std::vector<Diagnostic>& ds, const std::string& filename);

} // namespace casq
