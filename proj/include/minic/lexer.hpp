#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "minic/result.hpp"

namespace minic {

struct ParseError {
  int line = 1;
  int column = 1;
  std::string message;
};

enum class Tok {
  Ident,
  IntLit,
  KwInt,
  KwVoid,
  KwVolatile,
  KwIf,
  KwElse,
  KwWhile,
  KwReturn,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Semi,
  Comma,
  Assign,
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  EqEq,
  NotEq,
  Lt,
  Le,
  Gt,
  Ge,
  Not,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  long long int_value = 0;
  int line = 1;
  int column = 1;
};

/// Splits source text into tokens. Comments (// and /* */) are skipped;
/// C99 keywords outside the supported subset are rejected here.
Result<std::vector<Token>, ParseError> tokenize(std::string_view src);

}  // namespace minic
