#pragma once

#include <string>
#include <string_view>

#include "minic/ast.hpp"
#include "minic/lexer.hpp"
#include "minic/result.hpp"

namespace minic {

struct SourceFile {
  std::string path;
  std::string text;
};

/// Parses a mini-C translation unit. Identifiers are interned but never
/// uniquified: a global x and a parameter x yield the same Ident, so
/// shadowing stays visible in the AST.
Result<Program, ParseError> parse(const SourceFile& src);

Result<Program, ParseError> parse_text(std::string_view text);

}  // namespace minic
