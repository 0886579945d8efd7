#include "minic/parser.hpp"

#include <optional>

namespace minic {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Result<Program, ParseError> program() {
    Program p;
    p.main = intern("main");
    while (!at(Tok::Eof)) {
      if (auto err = top_def(p)) return *err;
    }
    return p;
  }

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;

  const Token& cur() const { return tokens_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  const Token& take() { return tokens_[pos_++]; }

  ParseError err_here(std::string msg) const {
    return ParseError{cur().line, cur().column, std::move(msg)};
  }

  std::optional<ParseError> expect(Tok k, const char* what) {
    if (!at(k)) return err_here(std::string("expected ") + what);
    take();
    return std::nullopt;
  }

  // Returns an error, or nullopt and appends the definition to p.
  std::optional<ParseError> top_def(Program& p) {
    bool is_volatile = false;
    if (at(Tok::KwVolatile)) {
      take();
      is_volatile = true;
    }
    CType ty;
    if (at(Tok::KwInt)) {
      ty = CType::Int;
      take();
    } else if (at(Tok::KwVoid)) {
      ty = CType::Void;
      take();
    } else {
      return err_here("expected type");
    }
    if (!at(Tok::Ident)) return err_here("expected identifier");
    Token name_tok = take();
    Ident name = intern(name_tok.text);

    if (at(Tok::LParen)) {
      if (is_volatile) {
        return ParseError{name_tok.line, name_tok.column,
                          "functions cannot be volatile"};
      }
      auto fn = function_def(ty);
      if (!fn.ok()) return fn.error();
      p.defs.emplace_back(name, GlobDef{fn.take()});
      return std::nullopt;
    }

    // Global variable.
    if (ty == CType::Void) {
      return ParseError{name_tok.line, name_tok.column,
                        "variables cannot have void type"};
    }
    GlobVar gv;
    gv.type = ty;
    gv.is_volatile = is_volatile;
    if (at(Tok::Assign)) {
      const Token& eq = take();
      auto init = expression();
      if (!init.ok()) return init.error();
      if (!is_const_expr(*init.value())) {
        return ParseError{eq.line, eq.column,
                          "global initializer cannot contain assignments or "
                          "calls"};
      }
      gv.init.push_back(init.take());
    }
    if (auto err = expect(Tok::Semi, "';'")) return err;
    p.defs.emplace_back(name, GlobDef{std::move(gv)});
    return std::nullopt;
  }

  Result<FunctionPtr, ParseError> function_def(CType ret) {
    take();  // '('
    Function f;
    f.ret = ret;
    if (at(Tok::KwVoid)) {
      take();
      if (auto err = expect(Tok::RParen, "')'")) return *err;
    } else if (at(Tok::RParen)) {
      take();
    } else {
      while (true) {
        if (auto err = expect(Tok::KwInt, "parameter type")) return *err;
        if (!at(Tok::Ident)) return err_here("expected parameter name");
        f.params.emplace_back(intern(take().text), CType::Int);
        if (at(Tok::Comma)) {
          take();
          continue;
        }
        break;
      }
      if (auto err = expect(Tok::RParen, "')'")) return *err;
    }

    if (auto err = expect(Tok::LBrace, "'{'")) return *err;

    // Local declarations come first; the grammar has no block-scoped ones.
    while (at(Tok::KwInt) || at(Tok::KwVoid) || at(Tok::KwVolatile)) {
      if (at(Tok::KwVolatile))
        return err_here("local variables cannot be volatile");
      if (at(Tok::KwVoid))
        return err_here("variables cannot have void type");
      take();
      if (!at(Tok::Ident)) return err_here("expected local variable name");
      f.locals.emplace_back(intern(take().text), CType::Int);
      if (at(Tok::Assign)) {
        return err_here(
            "local declarations cannot have initializers; use an assignment "
            "statement");
      }
      if (auto err = expect(Tok::Semi, "';'")) return *err;
    }

    std::vector<StmtPtr> body;
    while (!at(Tok::RBrace)) {
      auto s = statement();
      if (!s.ok()) return s.error();
      body.push_back(s.take());
    }
    take();  // '}'
    f.body = fold_stmts(body);
    return std::make_shared<const Function>(std::move(f));
  }

  Result<StmtPtr, ParseError> statement() {
    if (at(Tok::KwInt) || at(Tok::KwVolatile)) {
      return err_here(
          "local declarations must appear at the top of the function body");
    }
    if (at(Tok::Semi)) {
      take();
      return make_skip();
    }
    if (at(Tok::LBrace)) {
      take();
      std::vector<StmtPtr> stmts;
      while (!at(Tok::RBrace)) {
        if (at(Tok::Eof)) return err_here("expected '}'");
        auto s = statement();
        if (!s.ok()) return s;
        stmts.push_back(s.take());
      }
      take();
      return fold_stmts(stmts);
    }
    if (at(Tok::KwIf)) {
      take();
      if (auto err = expect(Tok::LParen, "'('")) return *err;
      auto cond = expression();
      if (!cond.ok()) return cond.error();
      if (auto err = expect(Tok::RParen, "')'")) return *err;
      auto then_branch = statement();
      if (!then_branch.ok()) return then_branch;
      StmtPtr else_branch = make_skip();
      if (at(Tok::KwElse)) {
        take();
        auto e = statement();
        if (!e.ok()) return e;
        else_branch = e.take();
      }
      return make_if(cond.take(), then_branch.take(), else_branch);
    }
    if (at(Tok::KwWhile)) {
      take();
      if (auto err = expect(Tok::LParen, "'('")) return *err;
      auto cond = expression();
      if (!cond.ok()) return cond.error();
      if (auto err = expect(Tok::RParen, "')'")) return *err;
      auto body = statement();
      if (!body.ok()) return body;
      return make_while(cond.take(), body.take());
    }
    if (at(Tok::KwReturn)) {
      take();
      if (at(Tok::Semi)) {
        take();
        return make_return(nullptr);
      }
      auto value = expression();
      if (!value.ok()) return value.error();
      if (auto err = expect(Tok::Semi, "';'")) return *err;
      return make_return(value.take());
    }
    auto e = expression();
    if (!e.ok()) return e.error();
    if (auto err = expect(Tok::Semi, "';'")) return *err;
    return make_expr_stmt(e.take());
  }

  Result<ExprPtr, ParseError> expression() { return assignment(); }

  Result<ExprPtr, ParseError> assignment() {
    auto lhs = equality();
    if (!lhs.ok()) return lhs;
    if (at(Tok::Assign)) {
      const Token& eq = cur();
      if (!std::holds_alternative<Var>(lhs.value()->node)) {
        return ParseError{eq.line, eq.column,
                          "assignment target must be a variable"};
      }
      take();
      auto rhs = assignment();
      if (!rhs.ok()) return rhs;
      return make_assign(lhs.take(), rhs.take());
    }
    return lhs;
  }

  Result<ExprPtr, ParseError> equality() {
    auto lhs = relational();
    if (!lhs.ok()) return lhs;
    ExprPtr acc = lhs.take();
    while (at(Tok::EqEq) || at(Tok::NotEq)) {
      BinOp op = at(Tok::EqEq) ? BinOp::Eq : BinOp::Ne;
      take();
      auto rhs = relational();
      if (!rhs.ok()) return rhs;
      acc = make_binop(op, std::move(acc), rhs.take());
    }
    return acc;
  }

  Result<ExprPtr, ParseError> relational() {
    auto lhs = additive();
    if (!lhs.ok()) return lhs;
    ExprPtr acc = lhs.take();
    while (at(Tok::Lt) || at(Tok::Le) || at(Tok::Gt) || at(Tok::Ge)) {
      BinOp op = at(Tok::Lt)   ? BinOp::Lt
                 : at(Tok::Le) ? BinOp::Le
                 : at(Tok::Gt) ? BinOp::Gt
                               : BinOp::Ge;
      take();
      auto rhs = additive();
      if (!rhs.ok()) return rhs;
      acc = make_binop(op, std::move(acc), rhs.take());
    }
    return acc;
  }

  Result<ExprPtr, ParseError> additive() {
    auto lhs = multiplicative();
    if (!lhs.ok()) return lhs;
    ExprPtr acc = lhs.take();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
      take();
      auto rhs = multiplicative();
      if (!rhs.ok()) return rhs;
      acc = make_binop(op, std::move(acc), rhs.take());
    }
    return acc;
  }

  Result<ExprPtr, ParseError> multiplicative() {
    auto lhs = unary();
    if (!lhs.ok()) return lhs;
    ExprPtr acc = lhs.take();
    while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
      BinOp op = at(Tok::Star)    ? BinOp::Mul
                 : at(Tok::Slash) ? BinOp::Div
                                  : BinOp::Mod;
      take();
      auto rhs = unary();
      if (!rhs.ok()) return rhs;
      acc = make_binop(op, std::move(acc), rhs.take());
    }
    return acc;
  }

  Result<ExprPtr, ParseError> unary() {
    if (at(Tok::Minus)) {
      take();
      auto arg = unary();
      if (!arg.ok()) return arg;
      return make_unop(UnOp::Neg, arg.take());
    }
    if (at(Tok::Not)) {
      take();
      auto arg = unary();
      if (!arg.ok()) return arg;
      return make_unop(UnOp::Not, arg.take());
    }
    return primary();
  }

  Result<ExprPtr, ParseError> primary() {
    if (at(Tok::IntLit)) {
      return make_int(take().int_value);
    }
    if (at(Tok::Ident)) {
      Ident name = intern(take().text);
      if (at(Tok::LParen)) {
        take();
        std::vector<ExprPtr> args;
        if (!at(Tok::RParen)) {
          while (true) {
            auto a = expression();
            if (!a.ok()) return a;
            args.push_back(a.take());
            if (at(Tok::Comma)) {
              take();
              continue;
            }
            break;
          }
        }
        if (auto err = expect(Tok::RParen, "')'")) return *err;
        return make_call(name, std::move(args));
      }
      return make_var(name);
    }
    if (at(Tok::LParen)) {
      take();
      auto e = expression();
      if (!e.ok()) return e;
      if (auto err = expect(Tok::RParen, "')'")) return *err;
      return e;
    }
    return err_here("expected expression");
  }
};

}  // namespace

Result<Program, ParseError> parse(const SourceFile& src) {
  return parse_text(src.text);
}

Result<Program, ParseError> parse_text(std::string_view text) {
  auto tokens = tokenize(text);
  if (!tokens.ok()) return tokens.error();
  Parser parser(tokens.take());
  return parser.program();
}

}  // namespace minic
