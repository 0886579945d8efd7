#include "minic/lexer.hpp"

#include <cctype>
#include <charconv>

#include "minic/keywords.hpp"

namespace minic {

namespace {

struct Cursor {
  std::string_view src;
  size_t pos = 0;
  int line = 1;
  int column = 1;

  bool done() const { return pos >= src.size(); }
  char peek(size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  void advance() {
    if (src[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }
};

Tok keyword_token(std::string_view text) {
  if (text == "int") return Tok::KwInt;
  if (text == "void") return Tok::KwVoid;
  if (text == "volatile") return Tok::KwVolatile;
  if (text == "if") return Tok::KwIf;
  if (text == "else") return Tok::KwElse;
  if (text == "while") return Tok::KwWhile;
  if (text == "return") return Tok::KwReturn;
  return Tok::Ident;
}

}  // namespace

Result<std::vector<Token>, ParseError> tokenize(std::string_view src) {
  std::vector<Token> out;
  Cursor c{src};

  auto error = [&](std::string msg) {
    return ParseError{c.line, c.column, std::move(msg)};
  };

  while (!c.done()) {
    char ch = c.peek();
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      c.advance();
      continue;
    }
    if (ch == '/' && c.peek(1) == '/') {
      while (!c.done() && c.peek() != '\n') c.advance();
      continue;
    }
    if (ch == '/' && c.peek(1) == '*') {
      int start_line = c.line, start_col = c.column;
      c.advance();
      c.advance();
      bool closed = false;
      while (!c.done()) {
        if (c.peek() == '*' && c.peek(1) == '/') {
          c.advance();
          c.advance();
          closed = true;
          break;
        }
        c.advance();
      }
      if (!closed) {
        return ParseError{start_line, start_col, "unterminated comment"};
      }
      continue;
    }

    int line = c.line, column = c.column;
    auto push = [&](Tok kind, std::string text) {
      out.push_back(Token{kind, std::move(text), 0, line, column});
    };

    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t start = c.pos;
      while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) ||
                           c.peek() == '_')) {
        c.advance();
      }
      std::string_view text = src.substr(start, c.pos - start);
      Tok kind = keyword_token(text);
      if (kind == Tok::Ident && is_c_keyword(text)) {
        return ParseError{line, column,
                          "reserved C keyword '" + std::string(text) + "'"};
      }
      push(kind, std::string(text));
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t start = c.pos;
      while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        c.advance();
      }
      if (!c.done() && (std::isalpha(static_cast<unsigned char>(c.peek())) ||
                        c.peek() == '_')) {
        return ParseError{line, column, "malformed number"};
      }
      std::string_view text = src.substr(start, c.pos - start);
      long long value = 0;
      auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        return ParseError{line, column, "integer literal out of range"};
      }
      out.push_back(Token{Tok::IntLit, std::string(text), value, line, column});
      continue;
    }

    switch (ch) {
      case '(': c.advance(); push(Tok::LParen, "("); continue;
      case ')': c.advance(); push(Tok::RParen, ")"); continue;
      case '{': c.advance(); push(Tok::LBrace, "{"); continue;
      case '}': c.advance(); push(Tok::RBrace, "}"); continue;
      case ';': c.advance(); push(Tok::Semi, ";"); continue;
      case ',': c.advance(); push(Tok::Comma, ","); continue;
      case '+': c.advance(); push(Tok::Plus, "+"); continue;
      case '-': c.advance(); push(Tok::Minus, "-"); continue;
      case '*': c.advance(); push(Tok::Star, "*"); continue;
      case '/': c.advance(); push(Tok::Slash, "/"); continue;
      case '%': c.advance(); push(Tok::Percent, "%"); continue;
      case '=':
        c.advance();
        if (c.peek() == '=') {
          c.advance();
          push(Tok::EqEq, "==");
        } else {
          push(Tok::Assign, "=");
        }
        continue;
      case '!':
        c.advance();
        if (c.peek() == '=') {
          c.advance();
          push(Tok::NotEq, "!=");
        } else {
          push(Tok::Not, "!");
        }
        continue;
      case '<':
        c.advance();
        if (c.peek() == '=') {
          c.advance();
          push(Tok::Le, "<=");
        } else {
          push(Tok::Lt, "<");
        }
        continue;
      case '>':
        c.advance();
        if (c.peek() == '=') {
          c.advance();
          push(Tok::Ge, ">=");
        } else {
          push(Tok::Gt, ">");
        }
        continue;
      default:
        return error(std::string("unexpected character '") + ch + "'");
    }
  }

  out.push_back(Token{Tok::Eof, "", 0, c.line, c.column});
  return out;
}

}  // namespace minic
