#include "minic/ast.hpp"

#include <set>

namespace minic {

ExprPtr make_var(Ident name, CType type) {
  return std::make_shared<const Expr>(Expr{Var{name, type}});
}

ExprPtr make_int(long long value) {
  return std::make_shared<const Expr>(Expr{IntConst{value}});
}

ExprPtr make_unop(UnOp op, ExprPtr arg) {
  return std::make_shared<const Expr>(Expr{Unop{op, std::move(arg)}});
}

ExprPtr make_binop(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(
      Expr{Binop{op, std::move(lhs), std::move(rhs)}});
}

ExprPtr make_assign(ExprPtr target, ExprPtr value) {
  return std::make_shared<const Expr>(
      Expr{Assign{std::move(target), std::move(value)}});
}

ExprPtr make_call(Ident callee, std::vector<ExprPtr> args) {
  return std::make_shared<const Expr>(Expr{Call{callee, std::move(args)}});
}

StmtPtr make_skip() { return std::make_shared<const Stmt>(Stmt{Skip{}}); }

StmtPtr make_expr_stmt(ExprPtr e) {
  return std::make_shared<const Stmt>(Stmt{ExprStmt{std::move(e)}});
}

StmtPtr make_seq(StmtPtr first, StmtPtr second) {
  return std::make_shared<const Stmt>(
      Stmt{Seq{std::move(first), std::move(second)}});
}

StmtPtr make_if(ExprPtr cond, StmtPtr then_branch, StmtPtr else_branch) {
  return std::make_shared<const Stmt>(
      Stmt{If{std::move(cond), std::move(then_branch), std::move(else_branch)}});
}

StmtPtr make_while(ExprPtr cond, StmtPtr body) {
  return std::make_shared<const Stmt>(
      Stmt{While{std::move(cond), std::move(body)}});
}

StmtPtr make_return(ExprPtr value) {
  return std::make_shared<const Stmt>(Stmt{Return{std::move(value)}});
}

StmtPtr fold_stmts(const std::vector<StmtPtr>& stmts) {
  if (stmts.empty()) return make_skip();
  StmtPtr acc = stmts.back();
  for (size_t i = stmts.size() - 1; i-- > 0;) {
    acc = make_seq(stmts[i], acc);
  }
  return acc;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Var>) {
          return x.name == y.name && x.type == y.type;
        } else if constexpr (std::is_same_v<T, IntConst>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Unop>) {
          return x.op == y.op && equal(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, Binop>) {
          return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, Assign>) {
          return equal(x.target, y.target) && equal(x.value, y.value);
        } else {
          static_assert(std::is_same_v<T, Call>);
          if (x.callee != y.callee || x.args.size() != y.args.size())
            return false;
          for (size_t i = 0; i < x.args.size(); ++i) {
            if (!equal(x.args[i], y.args[i])) return false;
          }
          return true;
        }
      },
      a.node);
}

bool operator==(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Skip>) {
          return true;
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          return equal(x.expr, y.expr);
        } else if constexpr (std::is_same_v<T, Seq>) {
          return equal(x.first, y.first) && equal(x.second, y.second);
        } else if constexpr (std::is_same_v<T, If>) {
          return equal(x.cond, y.cond) && equal(x.then_branch, y.then_branch) &&
                 equal(x.else_branch, y.else_branch);
        } else if constexpr (std::is_same_v<T, While>) {
          return equal(x.cond, y.cond) && equal(x.body, y.body);
        } else {
          static_assert(std::is_same_v<T, Return>);
          return equal(x.value, y.value);
        }
      },
      a.node);
}

bool operator==(const Function& a, const Function& b) {
  return a.ret == b.ret && a.params == b.params && a.locals == b.locals &&
         equal(a.body, b.body);
}

bool equal(const FunctionPtr& a, const FunctionPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const GlobVar& a, const GlobVar& b) {
  if (a.type != b.type || a.is_volatile != b.is_volatile ||
      a.init.size() != b.init.size())
    return false;
  for (size_t i = 0; i < a.init.size(); ++i) {
    if (!equal(a.init[i], b.init[i])) return false;
  }
  return true;
}

bool equal(const GlobDef& a, const GlobDef& b) {
  if (a.index() != b.index()) return false;
  if (const auto* gv = std::get_if<GlobVar>(&a)) {
    return *gv == std::get<GlobVar>(b);
  }
  return equal(std::get<FunctionPtr>(a), std::get<FunctionPtr>(b));
}

bool operator==(const Program& a, const Program& b) {
  if (a.main != b.main || a.defs.size() != b.defs.size()) return false;
  for (size_t i = 0; i < a.defs.size(); ++i) {
    if (a.defs[i].first != b.defs[i].first) return false;
    if (!equal(a.defs[i].second, b.defs[i].second)) return false;
  }
  return true;
}

bool binds(Ident x, const Function& f) {
  for (const auto& [name, ty] : f.params) {
    if (name == x) return true;
  }
  for (const auto& [name, ty] : f.locals) {
    if (name == x) return true;
  }
  return false;
}

bool appears_expr(Ident x, const Expr& e) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          return n.name == x;
        } else if constexpr (std::is_same_v<T, IntConst>) {
          return false;
        } else if constexpr (std::is_same_v<T, Unop>) {
          return appears_expr(x, *n.arg);
        } else if constexpr (std::is_same_v<T, Binop>) {
          return appears_expr(x, *n.lhs) || appears_expr(x, *n.rhs);
        } else if constexpr (std::is_same_v<T, Assign>) {
          return appears_expr(x, *n.target) || appears_expr(x, *n.value);
        } else {
          static_assert(std::is_same_v<T, Call>);
          if (n.callee == x) return true;
          for (const auto& a : n.args) {
            if (appears_expr(x, *a)) return true;
          }
          return false;
        }
      },
      e.node);
}

bool appears_statement(Ident x, const Stmt& s) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Skip>) {
          return false;
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          return appears_expr(x, *n.expr);
        } else if constexpr (std::is_same_v<T, Seq>) {
          return appears_statement(x, *n.first) ||
                 appears_statement(x, *n.second);
        } else if constexpr (std::is_same_v<T, If>) {
          return appears_expr(x, *n.cond) ||
                 appears_statement(x, *n.then_branch) ||
                 appears_statement(x, *n.else_branch);
        } else if constexpr (std::is_same_v<T, While>) {
          return appears_expr(x, *n.cond) || appears_statement(x, *n.body);
        } else {
          static_assert(std::is_same_v<T, Return>);
          return n.value && appears_expr(x, *n.value);
        }
      },
      s.node);
}

bool appears_in_init(Ident x, const std::vector<ExprPtr>& init) {
  for (const auto& e : init) {
    if (appears_expr(x, *e)) return true;
  }
  return false;
}

bool defines_globvar(Ident x, const Program& p) {
  for (const auto& [name, def] : p.defs) {
    if (name == x && std::holds_alternative<GlobVar>(def)) return true;
  }
  return false;
}

bool defines_volatile_globvar(Ident x, const Program& p) {
  for (const auto& [name, def] : p.defs) {
    if (name == x) {
      if (const auto* gv = std::get_if<GlobVar>(&def); gv && gv->is_volatile)
        return true;
    }
  }
  return false;
}

bool defines_func(Ident x, const Program& p) {
  for (const auto& [name, def] : p.defs) {
    if (name == x && std::holds_alternative<FunctionPtr>(def)) return true;
  }
  return false;
}

bool appears_free(Ident x, const Program& p) {
  for (const auto& [name, def] : p.defs) {
    if (const auto* gv = std::get_if<GlobVar>(&def)) {
      if (appears_in_init(x, gv->init)) return true;
    } else {
      const FunctionPtr& f = std::get<FunctionPtr>(def);
      if (!binds(x, *f) && appears_statement(x, *f->body)) return true;
    }
  }
  return false;
}

namespace {

size_t var_leaves_expr(const Expr& e) {
  return std::visit(
      [](const auto& n) -> size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          return 1;
        } else if constexpr (std::is_same_v<T, IntConst>) {
          return 0;
        } else if constexpr (std::is_same_v<T, Unop>) {
          return var_leaves_expr(*n.arg);
        } else if constexpr (std::is_same_v<T, Binop>) {
          return var_leaves_expr(*n.lhs) + var_leaves_expr(*n.rhs);
        } else if constexpr (std::is_same_v<T, Assign>) {
          return var_leaves_expr(*n.target) + var_leaves_expr(*n.value);
        } else {
          static_assert(std::is_same_v<T, Call>);
          size_t total = 0;
          for (const auto& a : n.args) total += var_leaves_expr(*a);
          return total;
        }
      },
      e.node);
}

size_t var_leaves_stmt(const Stmt& s) {
  return std::visit(
      [](const auto& n) -> size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Skip>) {
          return 0;
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          return var_leaves_expr(*n.expr);
        } else if constexpr (std::is_same_v<T, Seq>) {
          return var_leaves_stmt(*n.first) + var_leaves_stmt(*n.second);
        } else if constexpr (std::is_same_v<T, If>) {
          return var_leaves_expr(*n.cond) + var_leaves_stmt(*n.then_branch) +
                 var_leaves_stmt(*n.else_branch);
        } else if constexpr (std::is_same_v<T, While>) {
          return var_leaves_expr(*n.cond) + var_leaves_stmt(*n.body);
        } else {
          static_assert(std::is_same_v<T, Return>);
          return n.value ? var_leaves_expr(*n.value) : 0;
        }
      },
      s.node);
}

}  // namespace

size_t var_leaf_count(const Program& p) {
  size_t total = 0;
  for (const auto& [name, def] : p.defs) {
    if (const auto* gv = std::get_if<GlobVar>(&def)) {
      for (const auto& e : gv->init) total += var_leaves_expr(*e);
    } else {
      total += var_leaves_stmt(*std::get<FunctionPtr>(def)->body);
    }
  }
  return total;
}

bool is_const_expr(const Expr& e) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          return true;
        } else if constexpr (std::is_same_v<T, IntConst>) {
          return true;
        } else if constexpr (std::is_same_v<T, Unop>) {
          return is_const_expr(*n.arg);
        } else if constexpr (std::is_same_v<T, Binop>) {
          return is_const_expr(*n.lhs) && is_const_expr(*n.rhs);
        } else {
          return false;  // Assign, Call
        }
      },
      e.node);
}

std::vector<std::string> well_formedness_issues(const Program& p) {
  std::vector<std::string> issues;
  std::set<Ident> seen;
  for (const auto& [name, def] : p.defs) {
    if (!seen.insert(name).second) {
      issues.push_back("duplicate definition of '" + name_of(name) + "'");
    }
    if (const auto* gv = std::get_if<GlobVar>(&def)) {
      for (const auto& e : gv->init) {
        if (!is_const_expr(*e)) {
          issues.push_back("initializer of '" + name_of(name) +
                           "' contains an assignment or call");
        }
      }
    } else {
      const Function& f = *std::get<FunctionPtr>(def);
      std::set<Ident> binders;
      for (const auto& [b, ty] : f.params) {
        if (!binders.insert(b).second) {
          issues.push_back("duplicate binder '" + name_of(b) + "' in '" +
                           name_of(name) + "'");
        }
      }
      for (const auto& [b, ty] : f.locals) {
        if (!binders.insert(b).second) {
          issues.push_back("duplicate binder '" + name_of(b) + "' in '" +
                           name_of(name) + "'");
        }
      }
    }
  }
  return issues;
}

}  // namespace minic
