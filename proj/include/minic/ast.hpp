#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "minic/ident.hpp"

namespace minic {

enum class CType { Int, Void };

enum class UnOp { Neg, Not };

enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Var {
  Ident name;
  CType type = CType::Int;
};

struct IntConst {
  long long value = 0;
};

struct Unop {
  UnOp op;
  ExprPtr arg;
};

struct Binop {
  BinOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

// Target is always a Var; the parser enforces this and the interpreter
// reports a stuck state if it is violated by hand-built trees.
struct Assign {
  ExprPtr target;
  ExprPtr value;
};

// Direct calls only: the callee is an identifier, not an expression.
struct Call {
  Ident callee;
  std::vector<ExprPtr> args;
};

struct Expr {
  std::variant<Var, IntConst, Unop, Binop, Assign, Call> node;
};

ExprPtr make_var(Ident name, CType type = CType::Int);
ExprPtr make_int(long long value);
ExprPtr make_unop(UnOp op, ExprPtr arg);
ExprPtr make_binop(BinOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_assign(ExprPtr target, ExprPtr value);
ExprPtr make_call(Ident callee, std::vector<ExprPtr> args);

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Skip {};

struct ExprStmt {
  ExprPtr expr;
};

struct Seq {
  StmtPtr first;
  StmtPtr second;
};

struct If {
  ExprPtr cond;
  StmtPtr then_branch;
  StmtPtr else_branch;
};

struct While {
  ExprPtr cond;
  StmtPtr body;
};

struct Return {
  ExprPtr value;  // null for a bare `return;`
};

struct Stmt {
  std::variant<Skip, ExprStmt, Seq, If, While, Return> node;
};

StmtPtr make_skip();
StmtPtr make_expr_stmt(ExprPtr e);
StmtPtr make_seq(StmtPtr first, StmtPtr second);
StmtPtr make_if(ExprPtr cond, StmtPtr then_branch, StmtPtr else_branch);
StmtPtr make_while(ExprPtr cond, StmtPtr body);
StmtPtr make_return(ExprPtr value);

/// Right-folds a statement list into nested Seq nodes; empty list is Skip.
StmtPtr fold_stmts(const std::vector<StmtPtr>& stmts);

/// All local variables are declared at the top of the function; block-scoped
/// declarations do not exist at this level.
struct Function {
  CType ret = CType::Int;
  std::vector<std::pair<Ident, CType>> params;
  std::vector<std::pair<Ident, CType>> locals;
  StmtPtr body;
};
using FunctionPtr = std::shared_ptr<const Function>;

struct GlobVar {
  CType type = CType::Int;
  std::vector<ExprPtr> init;  // constant-expression subset: no assigns, no calls
  bool is_volatile = false;
};

using GlobDef = std::variant<GlobVar, FunctionPtr>;

struct Program {
  std::vector<std::pair<Ident, GlobDef>> defs;
  Ident main;
};

// Deep structural equality. The variant/pointer representation would
// otherwise compare addresses.
bool operator==(const Expr& a, const Expr& b);
bool operator==(const Stmt& a, const Stmt& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const StmtPtr& a, const StmtPtr& b);
bool operator==(const Function& a, const Function& b);
bool equal(const FunctionPtr& a, const FunctionPtr& b);
bool operator==(const GlobVar& a, const GlobVar& b);
bool equal(const GlobDef& a, const GlobDef& b);
bool operator==(const Program& a, const Program& b);

/// True iff x is a formal parameter or a local variable of f.
bool binds(Ident x, const Function& f);

/// True iff some Var leaf in e carries x; callee names count as occurrences.
bool appears_expr(Ident x, const Expr& e);

/// Same, over every expression embedded in s.
bool appears_statement(Ident x, const Stmt& s);

bool appears_in_init(Ident x, const std::vector<ExprPtr>& init);

/// Syntactic predicates over whole programs.
bool defines_globvar(Ident x, const Program& p);
bool defines_volatile_globvar(Ident x, const Program& p);
bool defines_func(Ident x, const Program& p);

/// x occurs in some initializer, or in some function body whose enclosing
/// function does not bind x.
bool appears_free(Ident x, const Program& p);

/// Number of Var leaves in the whole program (bodies and initializers).
size_t var_leaf_count(const Program& p);

/// True iff e stays inside the constant-expression subset allowed in global
/// initializers (no assignments, no calls).
bool is_const_expr(const Expr& e);

/// Well-formedness is reported, not assumed: duplicate definition names,
/// duplicate parameter/local names, and initializers outside the constant
/// subset are listed here but do not stop any pass.
std::vector<std::string> well_formedness_issues(const Program& p);

}  // namespace minic
