#include "minic/printer.hpp"

#include <sstream>

namespace minic {

namespace {

const char* binop_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
  }
  return "?";
}

int binop_prec(BinOp op) {
  switch (op) {
    case BinOp::Eq:
    case BinOp::Ne:
      return 4;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
      return 5;
    case BinOp::Add:
    case BinOp::Sub:
      return 6;
    default:
      return 7;  // Mul, Div, Mod
  }
}

constexpr int kAssignPrec = 1;
constexpr int kUnaryPrec = 8;
constexpr int kPrimaryPrec = 9;

int expr_prec(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          return kAssignPrec;
        } else if constexpr (std::is_same_v<T, Binop>) {
          return binop_prec(n.op);
        } else if constexpr (std::is_same_v<T, Unop>) {
          return kUnaryPrec;
        } else {
          return kPrimaryPrec;
        }
      },
      e.node);
}

void emit_expr(std::ostringstream& out, const Expr& e, int parent_prec) {
  bool parens = expr_prec(e) < parent_prec;
  if (parens) out << '(';
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          out << name_of(n.name);
        } else if constexpr (std::is_same_v<T, IntConst>) {
          out << n.value;
        } else if constexpr (std::is_same_v<T, Unop>) {
          out << (n.op == UnOp::Neg ? '-' : '!');
          emit_expr(out, *n.arg, kUnaryPrec);
        } else if constexpr (std::is_same_v<T, Binop>) {
          int prec = binop_prec(n.op);
          emit_expr(out, *n.lhs, prec);
          out << ' ' << binop_text(n.op) << ' ';
          emit_expr(out, *n.rhs, prec + 1);
        } else if constexpr (std::is_same_v<T, Assign>) {
          emit_expr(out, *n.target, kPrimaryPrec);
          out << " = ";
          emit_expr(out, *n.value, kAssignPrec);
        } else {
          static_assert(std::is_same_v<T, Call>);
          out << name_of(n.callee) << '(';
          for (size_t i = 0; i < n.args.size(); ++i) {
            if (i) out << ", ";
            emit_expr(out, *n.args[i], kAssignPrec);
          }
          out << ')';
        }
      },
      e.node);
  if (parens) out << ')';
}

void flatten(const StmtPtr& s, std::vector<StmtPtr>& out) {
  if (const auto* seq = std::get_if<Seq>(&s->node)) {
    flatten(seq->first, out);
    flatten(seq->second, out);
  } else {
    out.push_back(s);
  }
}

void emit_indent(std::ostringstream& out, int indent) {
  for (int i = 0; i < indent; ++i) out << "  ";
}

void emit_stmt(std::ostringstream& out, const Stmt& s, int indent);

// Prints the statements of a block body, one per line. A body equal to Skip
// prints as an empty block.
void emit_block_body(std::ostringstream& out, const StmtPtr& body,
                     int indent) {
  if (std::holds_alternative<Skip>(body->node)) return;
  std::vector<StmtPtr> stmts;
  flatten(body, stmts);
  for (const auto& st : stmts) emit_stmt(out, *st, indent);
}

void emit_stmt(std::ostringstream& out, const Stmt& s, int indent) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Skip>) {
          emit_indent(out, indent);
          out << ";\n";
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          emit_indent(out, indent);
          emit_expr(out, *n.expr, 0);
          out << ";\n";
        } else if constexpr (std::is_same_v<T, Seq>) {
          emit_stmt(out, *n.first, indent);
          emit_stmt(out, *n.second, indent);
        } else if constexpr (std::is_same_v<T, If>) {
          emit_indent(out, indent);
          out << "if (";
          emit_expr(out, *n.cond, 0);
          out << ") {\n";
          emit_block_body(out, n.then_branch, indent + 1);
          emit_indent(out, indent);
          if (std::holds_alternative<Skip>(n.else_branch->node)) {
            out << "}\n";
          } else {
            out << "} else {\n";
            emit_block_body(out, n.else_branch, indent + 1);
            emit_indent(out, indent);
            out << "}\n";
          }
        } else if constexpr (std::is_same_v<T, While>) {
          emit_indent(out, indent);
          out << "while (";
          emit_expr(out, *n.cond, 0);
          out << ") {\n";
          emit_block_body(out, n.body, indent + 1);
          emit_indent(out, indent);
          out << "}\n";
        } else {
          static_assert(std::is_same_v<T, Return>);
          emit_indent(out, indent);
          if (n.value) {
            out << "return ";
            emit_expr(out, *n.value, 0);
            out << ";\n";
          } else {
            out << "return;\n";
          }
        }
      },
      s.node);
}

const char* type_text(CType t) { return t == CType::Int ? "int" : "void"; }

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream out;
  emit_expr(out, e, 0);
  return out.str();
}

std::string print_stmt(const Stmt& s, int indent) {
  std::ostringstream out;
  emit_stmt(out, s, indent);
  return out.str();
}

std::string pretty_print(const Program& p) {
  std::ostringstream out;
  for (const auto& [name, def] : p.defs) {
    if (const auto* gv = std::get_if<GlobVar>(&def)) {
      if (gv->is_volatile) out << "volatile ";
      out << type_text(gv->type) << ' ' << name_of(name);
      if (!gv->init.empty()) {
        out << " = ";
        emit_expr(out, *gv->init.front(), 0);
      }
      out << ";\n";
    } else {
      const Function& f = *std::get<FunctionPtr>(def);
      out << type_text(f.ret) << ' ' << name_of(name) << '(';
      if (f.params.empty()) {
        out << "void";
      } else {
        for (size_t i = 0; i < f.params.size(); ++i) {
          if (i) out << ", ";
          out << type_text(f.params[i].second) << ' '
              << name_of(f.params[i].first);
        }
      }
      out << ") {\n";
      for (const auto& [local, ty] : f.locals) {
        out << "  " << type_text(ty) << ' ' << name_of(local) << ";\n";
      }
      emit_block_body(out, f.body, 1);
      out << "}\n";
    }
  }
  return out.str();
}

}  // namespace minic
