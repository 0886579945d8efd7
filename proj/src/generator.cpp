#include "minic/generator.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace minic {

namespace {

enum class Recipe { BindNone, BindOld, BindNew, BindBoth };

struct Scope {
  std::vector<Ident> values;   // params and initialized locals
  std::vector<Ident> globals;  // global variables in the program
  Ident maybe_uninit;          // a local that may be read uninitialized
  bool has_uninit = false;
};

}  // namespace

ProgramGenerator::ProgramGenerator(uint64_t seed, GenLimits limits)
    : rng_(seed), limits_(limits) {}

GenCase ProgramGenerator::next() {
  ++counter_;

  const Ident kMain = intern("main");
  const Ident kPrintf = intern("printf");

  // Globals for this program. "spare" is declared but never referenced by
  // any body, so renaming it meets the full sufficient precondition.
  std::vector<Ident> globals;
  int nglob = 1 + static_cast<int>(pick(limits_.max_globals));
  const char* glob_names[] = {"ga", "gb", "gc", "gd"};
  for (int i = 0; i < nglob; ++i) globals.push_back(intern(glob_names[i]));
  bool has_spare = chance(50);
  Ident spare = intern("spare");
  bool has_vol = chance(25);
  Ident vol = intern("vg");

  std::vector<Ident> func_names;
  int nfunc = 1 + static_cast<int>(pick(limits_.max_funcs));
  const char* fn_names[] = {"fa", "fb", "fc", "fd"};
  for (int i = 0; i < nfunc; ++i) func_names.push_back(intern(fn_names[i]));

  // The rename pair. Old name is usually a global; the rest of the draws
  // aim at every refusal path.
  Ident old_name;
  {
    uint64_t roll = pick(100);
    if (roll < 50) {
      old_name = globals[pick(globals.size())];
    } else if (roll < 64 && has_spare) {
      old_name = spare;
    } else if (roll < 72) {
      old_name = func_names[0];
    } else if (roll < 78) {
      old_name = kMain;
    } else if (roll < 85) {
      old_name = intern("zz");  // undeclared
    } else if (roll < 92 && has_vol) {
      old_name = vol;
    } else {
      old_name = globals[0];
    }
  }
  Ident new_name = old_name;
  while (new_name == old_name) {
    uint64_t roll = pick(100);
    if (roll < 30) {
      new_name = intern("nn");
    } else if (roll < 42) {
      new_name = globals[pick(globals.size())];
    } else if (roll < 54) {
      new_name = intern("lp");  // appears only as a binder
    } else if (roll < 60) {
      new_name = func_names[pick(func_names.size())];
    } else if (roll < 65) {
      new_name = kMain;
    } else if (roll < 72) {
      new_name = kPrintf;
    } else {
      new_name = intern("mm");
    }
  }

  Program p;
  p.main = kMain;

  // Global definitions with occasional initializer traps: a reference to
  // another global, to the new name, or to the variable itself.
  auto gen_init = [&](Ident self) -> std::vector<ExprPtr> {
    uint64_t roll = pick(100);
    if (roll < 45) return {};
    if (roll < 80) return {make_int(pick(10))};
    if (roll < 88 && globals.size() > 1)
      return {make_var(globals[pick(globals.size())])};
    if (roll < 94) return {make_var(new_name)};
    if (roll < 97) return {make_var(self)};
    return {make_binop(BinOp::Add, make_int(1 + pick(5)), make_int(pick(5)))};
  };
  for (Ident g : globals) {
    p.defs.emplace_back(g, GlobDef{GlobVar{CType::Int, gen_init(g), false}});
  }
  if (has_spare) {
    p.defs.emplace_back(spare,
                        GlobDef{GlobVar{CType::Int, {make_int(pick(5))}, false}});
  }
  if (has_vol) {
    p.defs.emplace_back(vol, GlobDef{GlobVar{CType::Int, {}, true}});
  }

  // Expression generator over the names in scope. "spare" is deliberately
  // never referenced anywhere.
  auto leaf = [&](const Scope& scope) -> ExprPtr {
    uint64_t roll = pick(100);
    if (roll < 40 || (scope.values.empty() && scope.globals.empty()))
      return make_int(pick(10));
    if (roll < 55 && scope.has_uninit && chance(30))
      return make_var(scope.maybe_uninit);
    if (roll < 70 && !scope.values.empty())
      return make_var(scope.values[pick(scope.values.size())]);
    if (!scope.globals.empty())
      return make_var(scope.globals[pick(scope.globals.size())]);
    return make_int(pick(10));
  };
  std::function<ExprPtr(const Scope&, int)> gen_expr =
      [&](const Scope& scope, int depth) -> ExprPtr {
    if (depth <= 0 || chance(45)) return leaf(scope);
    uint64_t roll = pick(100);
    if (roll < 60) {
      BinOp ops[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Lt, BinOp::Eq};
      return make_binop(ops[pick(5)], gen_expr(scope, depth - 1),
                        gen_expr(scope, depth - 1));
    }
    if (roll < 70) {
      return make_binop(BinOp::Div, gen_expr(scope, depth - 1),
                        make_int(1 + pick(4)));
    }
    if (roll < 80) {
      return make_unop(pick(2) ? UnOp::Neg : UnOp::Not,
                       gen_expr(scope, depth - 1));
    }
    if (roll < 90) {
      return make_call(kPrintf, {gen_expr(scope, depth - 1)});
    }
    return leaf(scope);
  };

  auto gen_cmp = [&](const Scope& scope) -> ExprPtr {
    BinOp ops[] = {BinOp::Lt, BinOp::Le, BinOp::Eq, BinOp::Ne, BinOp::Gt};
    return make_binop(ops[pick(5)], leaf(scope), leaf(scope));
  };

  // Builds a function following a binder recipe. `callable` lists functions
  // this body may call (lower-indexed ones only, so call chains terminate).
  auto gen_function = [&](Recipe recipe,
                          const std::vector<std::pair<Ident, size_t>>& callable)
      -> FunctionPtr {
    Function f;
    f.ret = CType::Int;

    std::set<Ident> binders;
    auto add_param = [&](Ident name) {
      if (binders.insert(name).second) f.params.emplace_back(name, CType::Int);
    };
    auto add_local = [&](Ident name) {
      if (binders.insert(name).second) f.locals.emplace_back(name, CType::Int);
    };

    if (recipe == Recipe::BindOld || recipe == Recipe::BindBoth) {
      if (chance(60)) {
        add_param(old_name);
      } else {
        add_local(old_name);
      }
    }
    if (recipe == Recipe::BindNew || recipe == Recipe::BindBoth) {
      if (chance(60)) {
        add_param(new_name);
      } else {
        add_local(new_name);
      }
    }
    if (chance(50)) add_param(intern("p"));
    Ident t = intern("t");
    add_local(t);
    bool has_q = chance(30);
    Ident q = intern("q");
    if (has_q) add_local(q);
    bool has_loop = chance(25);
    Ident li = intern("li");
    if (has_loop) add_local(li);

    Scope scope;
    scope.globals = globals;
    if (has_vol && chance(40)) scope.globals.push_back(vol);
    for (const auto& [name, ty] : f.params) scope.values.push_back(name);
    if (has_q) {
      scope.maybe_uninit = q;
      scope.has_uninit = true;
    }

    std::vector<StmtPtr> body;
    body.push_back(make_expr_stmt(make_assign(make_var(t), leaf(scope))));
    scope.values.push_back(t);
    if (recipe == Recipe::BindOld || recipe == Recipe::BindBoth) {
      // A bound occurrence of the old name.
      if (chance(70)) {
        body.push_back(make_expr_stmt(make_assign(
            make_var(t), make_binop(BinOp::Add, make_var(old_name),
                                    make_int(pick(4)))) ));
      }
    }
    if (recipe == Recipe::BindOld && chance(45)) {
      // Free occurrence of the new name in a body that binds the old one.
      body.push_back(make_expr_stmt(make_assign(
          make_var(t),
          make_binop(BinOp::Add, make_var(new_name), make_int(1)))));
    }
    if (recipe == Recipe::BindNew && chance(55)) {
      // Free occurrence of the old name in a body that binds the new one:
      // the capture situation.
      body.push_back(make_expr_stmt(make_assign(
          make_var(t),
          make_binop(BinOp::Add, make_var(old_name), make_int(1)))));
    }

    int extra = static_cast<int>(pick(limits_.max_stmts));
    for (int i = 0; i < extra; ++i) {
      uint64_t roll = pick(100);
      if (roll < 30 && !scope.globals.empty()) {
        Ident g = scope.globals[pick(scope.globals.size())];
        body.push_back(
            make_expr_stmt(make_assign(make_var(g), gen_expr(scope, 2))));
      } else if (roll < 50) {
        body.push_back(
            make_expr_stmt(make_assign(make_var(t), gen_expr(scope, 2))));
      } else if (roll < 65) {
        std::vector<StmtPtr> then_branch{make_expr_stmt(
            make_assign(make_var(t), gen_expr(scope, 1)))};
        std::vector<StmtPtr> else_branch;
        if (chance(40)) {
          else_branch.push_back(
              make_expr_stmt(make_assign(make_var(t), leaf(scope))));
        }
        body.push_back(make_if(gen_cmp(scope), fold_stmts(then_branch),
                               fold_stmts(else_branch)));
      } else if (roll < 75 && !callable.empty()) {
        const auto& [callee, arity] = callable[pick(callable.size())];
        std::vector<ExprPtr> args;
        for (size_t a = 0; a < arity; ++a) args.push_back(leaf(scope));
        body.push_back(make_expr_stmt(make_call(callee, std::move(args))));
      } else if (roll < 85) {
        body.push_back(
            make_expr_stmt(make_call(kPrintf, {make_int(pick(10))})));
      } else if (roll < 92) {
        body.push_back(make_expr_stmt(make_assign(
            make_var(t), make_binop(BinOp::Add, make_call(kPrintf, {make_int(1 + pick(5))}),
                                    make_call(kPrintf, {make_int(6 + pick(4))})))));
      } else {
        body.push_back(make_skip());
      }
    }

    if (has_loop) {
      body.push_back(make_expr_stmt(make_assign(make_var(li), make_int(0))));
      std::vector<StmtPtr> loop_body{
          make_expr_stmt(make_assign(make_var(t), gen_expr(scope, 1))),
          make_expr_stmt(make_assign(
              make_var(li), make_binop(BinOp::Add, make_var(li), make_int(1))))};
      body.push_back(make_while(
          make_binop(BinOp::Lt, make_var(li), make_int(1 + pick(3))),
          fold_stmts(loop_body)));
    }

    if (chance(85)) {
      body.push_back(make_return(gen_expr(scope, 2)));
    }
    f.body = fold_stmts(body);
    return std::make_shared<const Function>(std::move(f));
  };

  // Binder recipes rotate so all four cases show up across a run.
  std::vector<std::pair<Ident, size_t>> callable;
  for (size_t i = 0; i < func_names.size(); ++i) {
    Recipe recipe = chance(50)
                        ? static_cast<Recipe>((counter_ + i) % 4)
                        : static_cast<Recipe>(pick(4));
    FunctionPtr fn = gen_function(recipe, callable);
    p.defs.emplace_back(func_names[i], GlobDef{fn});
    callable.emplace_back(func_names[i], fn->params.size());
  }

  Recipe main_recipe = chance(30) ? static_cast<Recipe>(pick(4)) : Recipe::BindNone;
  FunctionPtr main_fn = gen_function(main_recipe, callable);
  p.defs.emplace_back(kMain, GlobDef{main_fn});

  // Rarely, an ill-formed duplicate: the first global's name reused for a
  // function. Well-formedness is reported, not assumed, and the engine must
  // refuse such a rename with its not-a-variable diagnostic instead of
  // crashing.
  if (chance(4)) {
    Function dup;
    dup.ret = CType::Int;
    dup.body = make_return(make_int(0));
    p.defs.emplace_back(globals[0],
                        GlobDef{std::make_shared<const Function>(std::move(dup))});
  }

  return GenCase{std::move(p), old_name, new_name};
}

}  // namespace minic
