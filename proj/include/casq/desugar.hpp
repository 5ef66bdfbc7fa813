#pragma once

#include "casq/ast.hpp"

namespace casq {

/// Expand every register-broadcast (uniform) statement into indexed
/// statements: all-register arguments expand index-wise, mixed
/// qubit/register arguments hold the qubit fixed and iterate the registers.
/// Requires check() to have passed.
Program desugar(const Program& p);

} // namespace casq
