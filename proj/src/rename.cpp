#include "minic/rename.hpp"

#include <cassert>

namespace minic {

std::optional<RenameRequest> RenameRequest::make(Ident old_name,
                                                 Ident new_name) {
  if (old_name == new_name) return std::nullopt;
  return RenameRequest{old_name, new_name};
}

RenameResult<Ident> rename_ident(Ident old_name, Ident new_name, Ident i) {
  if (i == old_name) return new_name;
  if (i == new_name)
    return RenameError{rename_msg::kNewAlreadyOccurs, std::nullopt};
  return i;
}

RenameResult<ExprPtr> rename_in_expr(Ident old_name, Ident new_name,
                                     const ExprPtr& e) {
  using R = RenameResult<ExprPtr>;
  return std::visit(
      [&](const auto& n) -> R {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          auto i = rename_ident(old_name, new_name, n.name);
          if (!i.ok()) return i.error();
          return make_var(i.value(), n.type);
        } else if constexpr (std::is_same_v<T, IntConst>) {
          return e;
        } else if constexpr (std::is_same_v<T, Unop>) {
          auto arg = rename_in_expr(old_name, new_name, n.arg);
          if (!arg.ok()) return arg;
          return make_unop(n.op, arg.take());
        } else if constexpr (std::is_same_v<T, Binop>) {
          auto lhs = rename_in_expr(old_name, new_name, n.lhs);
          if (!lhs.ok()) return lhs;
          auto rhs = rename_in_expr(old_name, new_name, n.rhs);
          if (!rhs.ok()) return rhs;
          return make_binop(n.op, lhs.take(), rhs.take());
        } else if constexpr (std::is_same_v<T, Assign>) {
          auto target = rename_in_expr(old_name, new_name, n.target);
          if (!target.ok()) return target;
          auto value = rename_in_expr(old_name, new_name, n.value);
          if (!value.ok()) return value;
          return make_assign(target.take(), value.take());
        } else {
          static_assert(std::is_same_v<T, Call>);
          auto callee = rename_ident(old_name, new_name, n.callee);
          if (!callee.ok()) return callee.error();
          std::vector<ExprPtr> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) {
            auto ra = rename_in_expr(old_name, new_name, a);
            if (!ra.ok()) return ra;
            args.push_back(ra.take());
          }
          return make_call(callee.value(), std::move(args));
        }
      },
      e->node);
}

RenameResult<StmtPtr> rename_in_statement(Ident old_name, Ident new_name,
                                          const StmtPtr& s) {
  using R = RenameResult<StmtPtr>;
  return std::visit(
      [&](const auto& n) -> R {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Skip>) {
          return s;
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          auto e = rename_in_expr(old_name, new_name, n.expr);
          if (!e.ok()) return e.error();
          return make_expr_stmt(e.take());
        } else if constexpr (std::is_same_v<T, Seq>) {
          auto first = rename_in_statement(old_name, new_name, n.first);
          if (!first.ok()) return first;
          auto second = rename_in_statement(old_name, new_name, n.second);
          if (!second.ok()) return second;
          return make_seq(first.take(), second.take());
        } else if constexpr (std::is_same_v<T, If>) {
          auto cond = rename_in_expr(old_name, new_name, n.cond);
          if (!cond.ok()) return cond.error();
          auto then_branch =
              rename_in_statement(old_name, new_name, n.then_branch);
          if (!then_branch.ok()) return then_branch;
          auto else_branch =
              rename_in_statement(old_name, new_name, n.else_branch);
          if (!else_branch.ok()) return else_branch;
          return make_if(cond.take(), then_branch.take(), else_branch.take());
        } else if constexpr (std::is_same_v<T, While>) {
          auto cond = rename_in_expr(old_name, new_name, n.cond);
          if (!cond.ok()) return cond.error();
          auto body = rename_in_statement(old_name, new_name, n.body);
          if (!body.ok()) return body;
          return make_while(cond.take(), body.take());
        } else {
          static_assert(std::is_same_v<T, Return>);
          if (!n.value) return s;
          auto value = rename_in_expr(old_name, new_name, n.value);
          if (!value.ok()) return value.error();
          return make_return(value.take());
        }
      },
      s->node);
}

RenameResult<FunctionPtr> rename_function_body(Ident old_name, Ident new_name,
                                               const FunctionPtr& f) {
  auto body = rename_in_statement(old_name, new_name, f->body);
  if (!body.ok()) return body.error();
  Function out = *f;
  out.body = body.take();
  return std::make_shared<const Function>(std::move(out));
}

RenameResult<FunctionPtr> rename_in_function(Ident old_name, Ident new_name,
                                             const FunctionPtr& f,
                                             EngineMutation mutation) {
  if (binds(old_name, *f)) {
    if (binds(new_name, *f)) return f;
    if (mutation != EngineMutation::DropShadowedBodyCheck &&
        appears_statement(new_name, *f->body)) {
      return RenameError{rename_msg::kNewOccursInFunction, std::nullopt};
    }
    return f;
  }
  if (binds(new_name, *f)) {
    if (mutation != EngineMutation::DropCaptureCheck &&
        appears_statement(old_name, *f->body)) {
      return RenameError{rename_msg::kWouldShadow, std::nullopt};
    }
    return f;
  }
  return rename_function_body(old_name, new_name, f);
}

namespace {

RenameResult<std::vector<ExprPtr>> rename_init(Ident old_name, Ident new_name,
                                               const std::vector<ExprPtr>& init) {
  std::vector<ExprPtr> out;
  out.reserve(init.size());
  for (const auto& e : init) {
    auto re = rename_in_expr(old_name, new_name, e);
    if (!re.ok()) return re.error();
    out.push_back(re.take());
  }
  return out;
}

}  // namespace

RenameResult<std::pair<Ident, GlobDef>> rename_in_definition(
    Ident old_name, Ident new_name, const std::pair<Ident, GlobDef>& def,
    EngineMutation mutation) {
  using R = RenameResult<std::pair<Ident, GlobDef>>;
  const auto& [name, content] = def;

  auto fail = [&](const char* msg) -> R {
    return RenameError{msg, name};
  };

  if (name == old_name) {
    // Checks run in a fixed order; the first failure wins.
    const auto* gv = std::get_if<GlobVar>(&content);
    if (!gv) return fail(rename_msg::kOldIsFunction);
    if (appears_in_init(old_name, gv->init))
      return fail(rename_msg::kOldInOwnInit);
    if (mutation != EngineMutation::SkipInitCollisionCheck &&
        appears_in_init(new_name, gv->init)) {
      return fail(rename_msg::kNewAlreadyOccurs);
    }
    if (mutation != EngineMutation::SkipVolatileCheck && gv->is_volatile)
      return fail(rename_msg::kVolatile);
    return std::make_pair(new_name, GlobDef{*gv});
  }

  if (name == new_name) return fail(rename_msg::kProgramDefinesNew);

  if (const auto* gv = std::get_if<GlobVar>(&content)) {
    auto init = rename_init(old_name, new_name, gv->init);
    if (!init.ok()) {
      RenameError err = init.error();
      err.location = name;
      return err;
    }
    GlobVar out = *gv;
    out.init = init.take();
    return std::make_pair(name, GlobDef{std::move(out)});
  }

  auto fn = rename_in_function(old_name, new_name,
                               std::get<FunctionPtr>(content), mutation);
  if (!fn.ok()) {
    RenameError err = fn.error();
    err.location = name;
    return err;
  }
  return std::make_pair(name, GlobDef{fn.take()});
}

RenameResult<Program> rename_global_var(Ident old_name, Ident new_name,
                                        const Program& p,
                                        EngineMutation mutation) {
  assert(old_name != new_name);
  if (old_name == p.main)
    return RenameError{rename_msg::kOldIsMain, std::nullopt};
  if (new_name == p.main)
    return RenameError{rename_msg::kNewIsMain, std::nullopt};
  if (!defines_globvar(old_name, p))
    return RenameError{rename_msg::kOldNotGlobal, std::nullopt};

  Program out;
  out.main = p.main;
  out.defs.reserve(p.defs.size());
  for (const auto& def : p.defs) {
    auto rdef = rename_in_definition(old_name, new_name, def, mutation);
    if (!rdef.ok()) return rdef.error();
    out.defs.push_back(rdef.take());
  }
  return out;
}

bool covers(Ident new_name, Ident old_name, const Function& f) {
  return binds(new_name, f) && !binds(old_name, f) &&
         appears_statement(old_name, *f.body);
}

bool no_cover_in_program(Ident old_name, Ident new_name, const Program& p) {
  for (const auto& [name, def] : p.defs) {
    if (const auto* fn = std::get_if<FunctionPtr>(&def)) {
      if (covers(new_name, old_name, **fn)) return false;
    }
  }
  return true;
}

bool PreconditionReport::pass() const {
  for (const auto& c : clauses) {
    if (!c.holds) return false;
  }
  return true;
}

PreconditionReport check_rename_precondition(Ident old_name, Ident new_name,
                                             const Program& p) {
  PreconditionReport report;
  auto clause = [&](const char* name, bool holds) {
    report.clauses.push_back({name, holds});
  };
  clause("x_ne_y", old_name != new_name);
  clause("x_ne_main", old_name != p.main);
  clause("y_ne_main", new_name != p.main);
  clause("defines_globvar_x", defines_globvar(old_name, p));
  clause("not_defines_globvar_y", !defines_globvar(new_name, p));
  clause("not_defines_volatile_globvar_x",
         !defines_volatile_globvar(old_name, p));
  clause("not_defines_func_x", !defines_func(old_name, p));
  clause("not_defines_func_y", !defines_func(new_name, p));
  clause("not_appears_free_y", !appears_free(new_name, p));
  clause("not_appears_free_x", !appears_free(old_name, p));
  clause("no_cover_in_prog", no_cover_in_program(old_name, new_name, p));
  return report;
}

}  // namespace minic
