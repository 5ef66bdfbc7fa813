#pragma once

#include <string>

#include "casq/ast.hpp"

namespace casq {

/// Deterministic source printer: one statement per line, two-space indent
/// inside gate bodies, declarations pulled in by includes are not repeated.
std::string print(const Program& p);

std::string print_stmt(const Stmt& s);
std::string print_expr(const AngleExprPtr& e);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

} // namespace casq
