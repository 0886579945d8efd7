#pragma once

#include <string>

#include "minic/ast.hpp"

namespace minic {

/// Emits compilable source for the program: one global per line, function
/// bodies with 2-space indentation, minimal parentheses. Output is
/// deterministic byte-for-byte and parses back to a structurally identical
/// tree. Layout and comments of the original file are not recovered.
std::string pretty_print(const Program& p);

std::string print_expr(const Expr& e);
std::string print_stmt(const Stmt& s, int indent = 0);

}  // namespace minic
