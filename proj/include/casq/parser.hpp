#pragma once

#include <stdexcept>
#include <string>

#include "casq/ast.hpp"

namespace casq {

/// Syntax or include-resolution error with source location.
class ParseError : public std::runtime_error {
  public:
    ParseError(Position pos, const std::string& msg)
        : std::runtime_error(msg), pos_(pos) {}
    Position pos() const { return pos_; }

  private:
    Position pos_;
};

/// Parse openQASM 2.0 source (plus the oracle/ancilla extensions).
/// `include "qelib1.inc"` resolves to the built-in standard library;
/// other includes resolve relative to `include_dir` when given.
Program parse(const std::string& source, const std::string& include_dir = "");

Program parse_file(const std::string& path);

/// The embedded standard-library source text.
const std::string& qelib1_source();

/// Names of the standard-library gates, in declaration order.
const std::vector<std::string>& qelib1_gate_names();

} // namespace casq
