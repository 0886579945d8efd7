#include "minic/semantics.hpp"

#include <deque>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "minic/printer.hpp"

namespace minic {

bool operator==(const GlobalEnv& a, const GlobalEnv& b) {
  if (a.main != b.main || a.vars != b.vars ||
      a.funcs.size() != b.funcs.size())
    return false;
  auto ita = a.funcs.begin();
  auto itb = b.funcs.begin();
  for (; ita != a.funcs.end(); ++ita, ++itb) {
    if (ita->first != itb->first || !equal(ita->second, itb->second))
      return false;
  }
  return true;
}

const ExtCallModel::Entry* ExtCallModel::find(Ident name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

bool ExtCallModel::compliant_for(Ident old_name, Ident new_name) const {
  for (const auto& [name, entry] : entries_) {
    if (entry.kind != Kind::Pure) return false;
    if (name == old_name || name == new_name) return false;
  }
  return true;
}

ExtCallModel ExtCallModel::default_model() {
  ExtCallModel m;
  m.add_pure(intern("printf"));
  return m;
}

ExprPtr plug(const EvalCtx& ctx, ExprPtr focus) {
  ExprPtr e = std::move(focus);
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
    e = std::visit(
        [&](const auto& f) -> ExprPtr {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, CtxUnop>) {
            return make_unop(f.op, std::move(e));
          } else if constexpr (std::is_same_v<T, CtxBinopL>) {
            return make_binop(f.op, std::move(e), f.rhs);
          } else if constexpr (std::is_same_v<T, CtxBinopR>) {
            return make_binop(f.op, f.lhs, std::move(e));
          } else if constexpr (std::is_same_v<T, CtxAssign>) {
            return make_assign(f.target, std::move(e));
          } else {
            static_assert(std::is_same_v<T, CtxCallArg>);
            std::vector<ExprPtr> args = f.args;
            args[f.index] = std::move(e);
            return make_call(f.callee, std::move(args));
          }
        },
        *it);
  }
  return e;
}

namespace {

bool ctx_frame_equal(const CtxFrame& a, const CtxFrame& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, CtxUnop>) {
          return x.op == y.op;
        } else if constexpr (std::is_same_v<T, CtxBinopL>) {
          return x.op == y.op && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, CtxBinopR>) {
          return x.op == y.op && equal(x.lhs, y.lhs);
        } else if constexpr (std::is_same_v<T, CtxAssign>) {
          return equal(x.target, y.target);
        } else {
          static_assert(std::is_same_v<T, CtxCallArg>);
          if (x.callee != y.callee || x.index != y.index ||
              x.args.size() != y.args.size())
            return false;
          for (size_t i = 0; i < x.args.size(); ++i) {
            if (i == x.index) continue;  // hole content is not meaningful
            if (!equal(x.args[i], y.args[i])) return false;
          }
          return true;
        }
      },
      a);
}

}  // namespace

bool equal(const EvalCtx& a, const EvalCtx& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!ctx_frame_equal(a[i], b[i])) return false;
  }
  return true;
}

Cont make_cont(FrameData data, Cont next) {
  return std::make_shared<const Frame>(Frame{std::move(data), std::move(next)});
}

Cont stop_cont() { return make_cont(KStop{}, nullptr); }

bool equal(const Cont& a, const Cont& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->data.index() != b->data.index()) return false;
  bool same = std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->data);
        if constexpr (std::is_same_v<T, KStop> || std::is_same_v<T, KDo> ||
                      std::is_same_v<T, KReturn>) {
          return true;
        } else if constexpr (std::is_same_v<T, KSeq>) {
          return equal(x.next, y.next);
        } else if constexpr (std::is_same_v<T, KIf>) {
          return equal(x.then_branch, y.then_branch) &&
                 equal(x.else_branch, y.else_branch);
        } else if constexpr (std::is_same_v<T, KWhile>) {
          return equal(x.cond, y.cond) && equal(x.body, y.body);
        } else {
          static_assert(std::is_same_v<T, KCall>);
          return equal(x.caller, y.caller) && x.env == y.env &&
                 equal(x.resume, y.resume);
        }
      },
      a->data);
  if (!same) return false;
  return equal(a->next, b->next);
}

bool operator==(const State& a, const State& b) {
  if (a.ext_calls != b.ext_calls || a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, StRunStmt>) {
          return equal(x.stmt, y.stmt) && equal(x.k, y.k) && x.env == y.env &&
                 equal(x.fn, y.fn) && x.ge == y.ge;
        } else if constexpr (std::is_same_v<T, StRunExpr>) {
          return equal(x.ctx, y.ctx) && equal(x.focus, y.focus) &&
                 equal(x.k, y.k) && x.env == y.env && equal(x.fn, y.fn) &&
                 x.ge == y.ge;
        } else if constexpr (std::is_same_v<T, StReturned>) {
          return x.value == y.value && equal(x.k, y.k) && x.ge == y.ge;
        } else {
          static_assert(std::is_same_v<T, StStuck>);
          return x.reason == y.reason;
        }
      },
      a.v);
}

bool is_final(const State& st) {
  const auto* r = std::get_if<StReturned>(&st.v);
  return r && std::holds_alternative<KStop>(r->k->data);
}

bool is_stuck(const State& st) {
  return std::holds_alternative<StStuck>(st.v);
}

std::string describe_state(const State& st) {
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StRunStmt>) {
          std::string text = print_stmt(*s.stmt);
          if (!text.empty() && text.back() == '\n') text.pop_back();
          return "stmt: " + text;
        } else if constexpr (std::is_same_v<T, StRunExpr>) {
          return "expr: " + print_expr(*plug(s.ctx, s.focus));
        } else if constexpr (std::is_same_v<T, StReturned>) {
          return "returned " + std::to_string(s.value);
        } else {
          return "stuck: " + s.reason;
        }
      },
      st.v);
}

namespace {

bool is_value(const Expr& e) {
  return std::holds_alternative<IntConst>(e.node);
}

long long value_of(const Expr& e) { return std::get<IntConst>(e.node).value; }

// A reducible position inside an expression. Pure redexes are arithmetic on
// constants; everything else (variable access, assignment, call) may touch
// the store or emit an event.
struct Redex {
  EvalCtx path;
  ExprPtr expr;
  bool pure = false;
};

void find_redexes(const ExprPtr& e, EvalCtx& path, std::vector<Redex>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          out.push_back({path, e, false});
        } else if constexpr (std::is_same_v<T, IntConst>) {
          // value, nothing to do
        } else if constexpr (std::is_same_v<T, Unop>) {
          if (is_value(*n.arg)) {
            out.push_back({path, e, true});
          } else {
            path.push_back(CtxUnop{n.op});
            find_redexes(n.arg, path, out);
            path.pop_back();
          }
        } else if constexpr (std::is_same_v<T, Binop>) {
          if (is_value(*n.lhs) && is_value(*n.rhs)) {
            out.push_back({path, e, true});
          } else {
            if (!is_value(*n.lhs)) {
              path.push_back(CtxBinopL{n.op, n.rhs});
              find_redexes(n.lhs, path, out);
              path.pop_back();
            }
            if (!is_value(*n.rhs)) {
              path.push_back(CtxBinopR{n.op, n.lhs});
              find_redexes(n.rhs, path, out);
              path.pop_back();
            }
          }
        } else if constexpr (std::is_same_v<T, Assign>) {
          // The target is an lvalue position and never reduces.
          if (is_value(*n.value)) {
            out.push_back({path, e, false});
          } else {
            path.push_back(CtxAssign{n.target});
            find_redexes(n.value, path, out);
            path.pop_back();
          }
        } else {
          static_assert(std::is_same_v<T, Call>);
          bool all_values = true;
          for (const auto& a : n.args) {
            if (!is_value(*a)) all_values = false;
          }
          if (all_values) {
            out.push_back({path, e, false});
          } else {
            for (size_t i = 0; i < n.args.size(); ++i) {
              if (is_value(*n.args[i])) continue;
              path.push_back(CtxCallArg{n.callee, n.args, i});
              find_redexes(n.args[i], path, out);
              path.pop_back();
            }
          }
        }
      },
      e->node);
}

Cont call_cont(Cont k) {
  while (!std::holds_alternative<KCall>(k->data) &&
         !std::holds_alternative<KStop>(k->data)) {
    k = k->next;
  }
  return k;
}

long long wrap_add(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) +
                                static_cast<unsigned long long>(b));
}
long long wrap_sub(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) -
                                static_cast<unsigned long long>(b));
}
long long wrap_mul(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) *
                                static_cast<unsigned long long>(b));
}
long long wrap_neg(long long a) {
  return static_cast<long long>(-static_cast<unsigned long long>(a));
}

// Performs one reduction at the given redex position of an expression
// state, appending all outcomes (a single one per redex).
void reduce_redex(const ExtCallModel& model, const Redex& r,
                  const StRunExpr& re, int ext_calls,
                  std::vector<Transition>& out) {
  auto stuck = [&](const char* reason) {
    out.push_back(Transition{{}, State{StStuck{reason}, ext_calls}});
  };
  auto value_step = [&](Trace events, long long result, LocalEnv env,
                        GlobalEnv ge, int ext) {
    out.push_back(Transition{
        std::move(events),
        State{StRunExpr{r.path, make_int(result), re.k, std::move(env), re.fn,
                        std::move(ge)},
              ext}});
  };

  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          auto local = re.env.find(n.name);
          if (local != re.env.end()) {
            if (!local->second.has_value()) {
              stuck(stuck_reason::kUninitLocal);
              return;
            }
            value_step({}, *local->second, re.env, re.ge, ext_calls);
            return;
          }
          auto global = re.ge.vars.find(n.name);
          if (global != re.ge.vars.end()) {
            long long v = global->second.value;
            Event ev = global->second.is_volatile
                           ? Event{VolLoadEvent{n.name, v}}
                           : Event{GlobReadEvent{n.name, v}};
            value_step({ev}, v, re.env, re.ge, ext_calls);
            return;
          }
          if (re.ge.funcs.count(n.name) || model.find(n.name)) {
            stuck(stuck_reason::kFnAsValue);
            return;
          }
          stuck(stuck_reason::kUndefinedVar);
        } else if constexpr (std::is_same_v<T, Unop>) {
          long long a = value_of(*n.arg);
          long long v = n.op == UnOp::Neg ? wrap_neg(a) : (a == 0 ? 1 : 0);
          value_step({}, v, re.env, re.ge, ext_calls);
        } else if constexpr (std::is_same_v<T, Binop>) {
          long long a = value_of(*n.lhs);
          long long b = value_of(*n.rhs);
          long long v = 0;
          switch (n.op) {
            case BinOp::Add: v = wrap_add(a, b); break;
            case BinOp::Sub: v = wrap_sub(a, b); break;
            case BinOp::Mul: v = wrap_mul(a, b); break;
            case BinOp::Div:
            case BinOp::Mod:
              if (b == 0) {
                stuck(stuck_reason::kDivZero);
                return;
              }
              if (a == std::numeric_limits<long long>::min() && b == -1) {
                stuck(stuck_reason::kDivOverflow);
                return;
              }
              v = n.op == BinOp::Div ? a / b : a % b;
              break;
            case BinOp::Eq: v = a == b; break;
            case BinOp::Ne: v = a != b; break;
            case BinOp::Lt: v = a < b; break;
            case BinOp::Le: v = a <= b; break;
            case BinOp::Gt: v = a > b; break;
            case BinOp::Ge: v = a >= b; break;
          }
          value_step({}, v, re.env, re.ge, ext_calls);
        } else if constexpr (std::is_same_v<T, Assign>) {
          const auto* target = std::get_if<Var>(&n.target->node);
          if (!target) {
            stuck(stuck_reason::kAssignNonLvalue);
            return;
          }
          long long v = value_of(*n.value);
          auto local = re.env.find(target->name);
          if (local != re.env.end()) {
            LocalEnv env = re.env;
            env[target->name] = v;
            value_step({}, v, std::move(env), re.ge, ext_calls);
            return;
          }
          auto global = re.ge.vars.find(target->name);
          if (global != re.ge.vars.end()) {
            GlobalEnv ge = re.ge;
            ge.vars[target->name].value = v;
            Event ev = global->second.is_volatile
                           ? Event{VolStoreEvent{target->name, v}}
                           : Event{GlobWriteEvent{target->name, v}};
            value_step({ev}, v, re.env, std::move(ge), ext_calls);
            return;
          }
          if (re.ge.funcs.count(target->name) || model.find(target->name)) {
            stuck(stuck_reason::kAssignToFn);
            return;
          }
          stuck(stuck_reason::kAssignUndefined);
        } else if constexpr (std::is_same_v<T, Call>) {
          std::vector<long long> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) args.push_back(value_of(*a));

          auto fn_it = re.ge.funcs.find(n.callee);
          if (fn_it != re.ge.funcs.end()) {
            const FunctionPtr& callee = fn_it->second;
            if (callee->params.size() != args.size()) {
              stuck(stuck_reason::kWrongArgs);
              return;
            }
            LocalEnv env;
            for (size_t i = 0; i < args.size(); ++i) {
              env[callee->params[i].first] = args[i];
            }
            for (const auto& [local, ty] : callee->locals) {
              env[local] = std::nullopt;
            }
            Cont k = make_cont(KCall{re.fn, re.env, r.path}, re.k);
            out.push_back(Transition{
                {},
                State{StRunStmt{callee->body, std::move(k), std::move(env),
                                callee, re.ge},
                      ext_calls}});
            return;
          }

          if (const auto* oracle = model.find(n.callee)) {
            long long result = 0;
            if (oracle->kind == ExtCallModel::Kind::Pure) {
              // printf-like: one character written per argument.
              result = static_cast<long long>(args.size());
            } else {
              auto g = re.ge.vars.find(oracle->global);
              if (g == re.ge.vars.end()) {
                stuck(stuck_reason::kExtMissingGlobal);
                return;
              }
              result = g->second.value;
            }
            Event ev = ExtCallEvent{n.callee, args, result};
            value_step({ev}, result, re.env, re.ge, ext_calls + 1);
            return;
          }

          if (re.ge.vars.count(n.callee)) {
            stuck(stuck_reason::kCalleeNotFn);
            return;
          }
          stuck(stuck_reason::kUndefinedFn);
        } else {
          stuck(stuck_reason::kIrreducible);  // IntConst is never a redex
        }
      },
      r.expr->node);
}

}  // namespace

std::vector<Transition> Interp::step(const State& st) const {
  std::vector<Transition> out;

  auto stuck = [&](const char* reason) {
    out.push_back(Transition{{}, State{StStuck{reason}, st.ext_calls}});
  };

  if (const auto* rs = std::get_if<StRunStmt>(&st.v)) {
    const Stmt& s = *rs->stmt;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Skip>) {
            const FrameData& top = rs->k->data;
            if (const auto* seq = std::get_if<KSeq>(&top)) {
              out.push_back(Transition{
                  {},
                  State{StRunStmt{seq->next, rs->k->next, rs->env, rs->fn,
                                  rs->ge},
                        st.ext_calls}});
            } else if (const auto* wh = std::get_if<KWhile>(&top)) {
              out.push_back(Transition{
                  {},
                  State{StRunStmt{make_while(wh->cond, wh->body), rs->k->next,
                                  rs->env, rs->fn, rs->ge},
                        st.ext_calls}});
            } else if (std::holds_alternative<KStop>(top) ||
                       std::holds_alternative<KCall>(top)) {
              // Fell off the end of a function body: implicit `return 0`.
              out.push_back(Transition{
                  {}, State{StReturned{0, rs->k, rs->ge}, st.ext_calls}});
            } else {
              stuck(stuck_reason::kIrreducible);  // not reachable
            }
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            out.push_back(Transition{
                {},
                State{StRunExpr{{}, n.expr, make_cont(KDo{}, rs->k), rs->env,
                                rs->fn, rs->ge},
                      st.ext_calls}});
          } else if constexpr (std::is_same_v<T, Seq>) {
            out.push_back(Transition{
                {},
                State{StRunStmt{n.first, make_cont(KSeq{n.second}, rs->k),
                                rs->env, rs->fn, rs->ge},
                      st.ext_calls}});
          } else if constexpr (std::is_same_v<T, If>) {
            out.push_back(Transition{
                {},
                State{StRunExpr{{},
                                n.cond,
                                make_cont(KIf{n.then_branch, n.else_branch},
                                          rs->k),
                                rs->env, rs->fn, rs->ge},
                      st.ext_calls}});
          } else if constexpr (std::is_same_v<T, While>) {
            out.push_back(Transition{
                {},
                State{StRunExpr{{}, n.cond,
                                make_cont(KWhile{n.cond, n.body}, rs->k),
                                rs->env, rs->fn, rs->ge},
                      st.ext_calls}});
          } else {
            static_assert(std::is_same_v<T, Return>);
            if (!n.value) {
              out.push_back(Transition{
                  {},
                  State{StReturned{0, call_cont(rs->k), rs->ge},
                        st.ext_calls}});
            } else {
              out.push_back(Transition{
                  {},
                  State{StRunExpr{{}, n.value, make_cont(KReturn{}, rs->k),
                                  rs->env, rs->fn, rs->ge},
                        st.ext_calls}});
            }
          }
        },
        s.node);
    return out;
  }

  if (const auto* re = std::get_if<StRunExpr>(&st.v)) {
    ExprPtr full = plug(re->ctx, re->focus);

    if (is_value(*full)) {
      long long v = value_of(*full);
      const FrameData& top = re->k->data;
      if (std::holds_alternative<KDo>(top)) {
        out.push_back(Transition{
            {},
            State{StRunStmt{make_skip(), re->k->next, re->env, re->fn, re->ge},
                  st.ext_calls}});
      } else if (const auto* ki = std::get_if<KIf>(&top)) {
        out.push_back(Transition{
            {},
            State{StRunStmt{v != 0 ? ki->then_branch : ki->else_branch,
                            re->k->next, re->env, re->fn, re->ge},
                  st.ext_calls}});
      } else if (const auto* kw = std::get_if<KWhile>(&top)) {
        if (v != 0) {
          out.push_back(Transition{
              {},
              State{StRunStmt{kw->body, re->k, re->env, re->fn, re->ge},
                    st.ext_calls}});
        } else {
          out.push_back(Transition{
              {},
              State{StRunStmt{make_skip(), re->k->next, re->env, re->fn,
                              re->ge},
                    st.ext_calls}});
        }
      } else if (std::holds_alternative<KReturn>(top)) {
        out.push_back(Transition{
            {},
            State{StReturned{v, call_cont(re->k->next), re->ge},
                  st.ext_calls}});
      } else {
        stuck(stuck_reason::kIrreducible);  // not reachable
      }
      return out;
    }

    std::vector<Redex> redexes;
    {
      EvalCtx path;
      find_redexes(full, path, redexes);
    }
    if (redexes.empty()) {
      // Only a malformed lvalue leaves no reducible position.
      stuck(stuck_reason::kAssignNonLvalue);
      return out;
    }

    std::vector<const Redex*> chosen;
    const Redex* first_pure = nullptr;
    for (const auto& r : redexes) {
      if (r.pure) {
        first_pure = &r;
        break;
      }
    }
    if (first_pure) {
      chosen.push_back(first_pure);
    } else if (mode_ == EvalMode::Deterministic) {
      chosen.push_back(&redexes.front());
    } else {
      for (const auto& r : redexes) chosen.push_back(&r);
    }

    for (const Redex* r : chosen) {
      reduce_redex(model_, *r, *re, st.ext_calls, out);
    }
    return out;
  }

  if (const auto* ret = std::get_if<StReturned>(&st.v)) {
    if (const auto* kc = std::get_if<KCall>(&ret->k->data)) {
      out.push_back(Transition{
          {},
          State{StRunExpr{kc->resume, make_int(ret->value), ret->k->next,
                          kc->env, kc->caller, ret->ge},
                st.ext_calls}});
    }
    // KStop: final state, no successors.
    return out;
  }

  // Stuck states have no successors.
  return out;
}

Result<State, EvalError> initial_state(const Program& p) {
  GlobalEnv ge;
  ge.main = p.main;
  for (const auto& [name, def] : p.defs) {
    ge.vars.erase(name);
    ge.funcs.erase(name);
    if (const auto* gv = std::get_if<GlobVar>(&def)) {
      ge.vars[name] = GlobalSlot{0, gv->is_volatile};
    } else {
      ge.funcs[name] = std::get<FunctionPtr>(def);
    }
  }

  // Initializers are evaluated silently in definition order; storage not
  // yet initialized reads as 0, like static storage.
  std::function<bool(const Expr&, long long&)> eval_const =
      [&](const Expr& e, long long& result) -> bool {
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var>) {
            auto it = ge.vars.find(n.name);
            if (it == ge.vars.end()) return false;
            result = it->second.value;
            return true;
          } else if constexpr (std::is_same_v<T, IntConst>) {
            result = n.value;
            return true;
          } else if constexpr (std::is_same_v<T, Unop>) {
            long long a = 0;
            if (!eval_const(*n.arg, a)) return false;
            result = n.op == UnOp::Neg ? wrap_neg(a) : (a == 0 ? 1 : 0);
            return true;
          } else if constexpr (std::is_same_v<T, Binop>) {
            long long a = 0, b = 0;
            if (!eval_const(*n.lhs, a) || !eval_const(*n.rhs, b)) return false;
            switch (n.op) {
              case BinOp::Add: result = wrap_add(a, b); return true;
              case BinOp::Sub: result = wrap_sub(a, b); return true;
              case BinOp::Mul: result = wrap_mul(a, b); return true;
              case BinOp::Div:
              case BinOp::Mod:
                if (b == 0) return false;
                if (a == std::numeric_limits<long long>::min() && b == -1)
                  return false;
                result = n.op == BinOp::Div ? a / b : a % b;
                return true;
              case BinOp::Eq: result = a == b; return true;
              case BinOp::Ne: result = a != b; return true;
              case BinOp::Lt: result = a < b; return true;
              case BinOp::Le: result = a <= b; return true;
              case BinOp::Gt: result = a > b; return true;
              case BinOp::Ge: result = a >= b; return true;
            }
            return false;
          } else {
            return false;  // Assign, Call: outside the constant subset
          }
        },
        e.node);
  };

  for (const auto& [name, def] : p.defs) {
    const auto* gv = std::get_if<GlobVar>(&def);
    if (!gv || gv->init.empty()) continue;
    if (!ge.vars.count(name)) continue;  // shadowed by a later definition
    long long v = 0;
    if (!eval_const(*gv->init.front(), v)) {
      return State{StStuck{stuck_reason::kBadInit}, 0};
    }
    ge.vars[name].value = v;
  }

  auto main_it = ge.funcs.find(p.main);
  if (main_it == ge.funcs.end()) {
    return EvalError{"no main function"};
  }
  const FunctionPtr& main_fn = main_it->second;

  LocalEnv env;
  for (const auto& [param, ty] : main_fn->params) env[param] = 0;
  for (const auto& [local, ty] : main_fn->locals) env[local] = std::nullopt;

  return State{StRunStmt{main_fn->body, stop_cont(), std::move(env), main_fn,
                         std::move(ge)},
               0};
}

namespace {

void explore(const Interp& interp, const State& st, int steps_left,
             Trace& trace, BehaviorSet& behaviors) {
  if (is_final(st)) {
    behaviors.insert(Behavior{BehaviorKind::Terminates, trace,
                              std::get<StReturned>(st.v).value});
    return;
  }
  if (is_stuck(st)) {
    behaviors.insert(Behavior{BehaviorKind::GoesWrong, trace, 0});
    return;
  }
  if (steps_left <= 0) {
    behaviors.insert(Behavior{BehaviorKind::Unknown, trace, 0});
    return;
  }
  std::vector<Transition> succ = interp.step(st);
  for (const Transition& t : succ) {
    for (const Event& ev : t.events) trace.push_back(ev);
    explore(interp, t.to, steps_left - 1, trace, behaviors);
    for (size_t i = 0; i < t.events.size(); ++i) trace.pop_back();
  }
}

}  // namespace

Result<BehaviorSet, EvalError> run(const Program& p, const ExtCallModel& model,
                                   EvalMode mode, int budget) {
  if (budget < 1) return EvalError{"step budget must be >= 1"};
  auto init = initial_state(p);
  if (!init.ok()) return init.error();
  Interp interp(model, mode);
  BehaviorSet behaviors;
  Trace trace;
  explore(interp, init.value(), budget, trace, behaviors);
  return behaviors;
}

RenameResult<GlobalEnv> rename_global_env(Ident old_name, Ident new_name,
                                          const GlobalEnv& ge) {
  if (ge.main == old_name)
    return RenameError{rename_msg::kOldIsMain, std::nullopt};
  if (ge.main == new_name)
    return RenameError{rename_msg::kNewIsMain, std::nullopt};
  if (ge.funcs.count(old_name))
    return RenameError{rename_msg::kOldIsFunction, old_name};
  if (ge.funcs.count(new_name) || ge.vars.count(new_name))
    return RenameError{rename_msg::kProgramDefinesNew, new_name};
  auto slot = ge.vars.find(old_name);
  if (slot == ge.vars.end())
    return RenameError{rename_msg::kOldNotGlobal, old_name};
  if (slot->second.is_volatile)
    return RenameError{rename_msg::kVolatile, old_name};

  GlobalEnv out;
  out.main = ge.main;
  out.vars = ge.vars;
  out.vars.erase(old_name);
  out.vars[new_name] = slot->second;
  for (const auto& [name, fn] : ge.funcs) {
    auto rf = rename_in_function(old_name, new_name, fn);
    if (!rf.ok()) {
      RenameError err = rf.error();
      err.location = name;
      return err;
    }
    out.funcs[name] = rf.take();
  }
  return out;
}

namespace {

// How a scope segment reacts to the renaming, mirroring the four cases of
// the per-function analysis.
enum class SegMode { Untouched, UntouchedNoNew, UntouchedNoOld, Rename };

SegMode seg_mode(bool binds_old, bool binds_new) {
  if (binds_old && binds_new) return SegMode::Untouched;
  if (binds_old) return SegMode::UntouchedNoNew;
  if (binds_new) return SegMode::UntouchedNoOld;
  return SegMode::Rename;
}

SegMode seg_mode_for_env(Ident old_name, Ident new_name, const LocalEnv& env) {
  return seg_mode(env.count(old_name) > 0, env.count(new_name) > 0);
}

SegMode seg_mode_for_function(Ident old_name, Ident new_name,
                              const Function& f) {
  return seg_mode(binds(old_name, f), binds(new_name, f));
}

RenameResult<ExprPtr> seg_expr(Ident old_name, Ident new_name, SegMode mode,
                               const ExprPtr& e) {
  switch (mode) {
    case SegMode::Untouched:
      return e;
    case SegMode::UntouchedNoNew:
      if (appears_expr(new_name, *e))
        return RenameError{rename_msg::kNewOccursInFunction, std::nullopt};
      return e;
    case SegMode::UntouchedNoOld:
      if (appears_expr(old_name, *e))
        return RenameError{rename_msg::kWouldShadow, std::nullopt};
      return e;
    case SegMode::Rename:
      return rename_in_expr(old_name, new_name, e);
  }
  return e;
}

RenameResult<StmtPtr> seg_stmt(Ident old_name, Ident new_name, SegMode mode,
                               const StmtPtr& s) {
  switch (mode) {
    case SegMode::Untouched:
      return s;
    case SegMode::UntouchedNoNew:
      if (appears_statement(new_name, *s))
        return RenameError{rename_msg::kNewOccursInFunction, std::nullopt};
      return s;
    case SegMode::UntouchedNoOld:
      if (appears_statement(old_name, *s))
        return RenameError{rename_msg::kWouldShadow, std::nullopt};
      return s;
    case SegMode::Rename:
      return rename_in_statement(old_name, new_name, s);
  }
  return s;
}

RenameResult<Ident> seg_ident(Ident old_name, Ident new_name, SegMode mode,
                              Ident i) {
  switch (mode) {
    case SegMode::Untouched:
      return i;
    case SegMode::UntouchedNoNew:
      if (i == new_name)
        return RenameError{rename_msg::kNewOccursInFunction, std::nullopt};
      return i;
    case SegMode::UntouchedNoOld:
      if (i == old_name)
        return RenameError{rename_msg::kWouldShadow, std::nullopt};
      return i;
    case SegMode::Rename:
      return rename_ident(old_name, new_name, i);
  }
  return i;
}

RenameResult<EvalCtx> seg_ctx(Ident old_name, Ident new_name, SegMode mode,
                              const EvalCtx& ctx) {
  EvalCtx out;
  out.reserve(ctx.size());
  for (const CtxFrame& f : ctx) {
    auto r = std::visit(
        [&](const auto& n) -> RenameResult<CtxFrame> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, CtxUnop>) {
            return CtxFrame{n};
          } else if constexpr (std::is_same_v<T, CtxBinopL>) {
            auto rhs = seg_expr(old_name, new_name, mode, n.rhs);
            if (!rhs.ok()) return rhs.error();
            return CtxFrame{CtxBinopL{n.op, rhs.take()}};
          } else if constexpr (std::is_same_v<T, CtxBinopR>) {
            auto lhs = seg_expr(old_name, new_name, mode, n.lhs);
            if (!lhs.ok()) return lhs.error();
            return CtxFrame{CtxBinopR{n.op, lhs.take()}};
          } else if constexpr (std::is_same_v<T, CtxAssign>) {
            auto target = seg_expr(old_name, new_name, mode, n.target);
            if (!target.ok()) return target.error();
            return CtxFrame{CtxAssign{target.take()}};
          } else {
            static_assert(std::is_same_v<T, CtxCallArg>);
            auto callee = seg_ident(old_name, new_name, mode, n.callee);
            if (!callee.ok()) return callee.error();
            std::vector<ExprPtr> args;
            args.reserve(n.args.size());
            for (size_t i = 0; i < n.args.size(); ++i) {
              if (i == n.index) {
                args.push_back(n.args[i]);  // hole, handled by the focus
                continue;
              }
              auto a = seg_expr(old_name, new_name, mode, n.args[i]);
              if (!a.ok()) return a.error();
              args.push_back(a.take());
            }
            return CtxFrame{CtxCallArg{callee.value(), std::move(args),
                                       n.index}};
          }
        },
        f);
    if (!r.ok()) return r.error();
    out.push_back(r.take());
  }
  return out;
}

// Renames a continuation. `mode` governs the current segment and changes at
// every call frame to the mode of that frame's function.
RenameResult<Cont> seg_cont(Ident old_name, Ident new_name, SegMode mode,
                            const Cont& k) {
  if (!k) return k;
  const FrameData& data = k->data;
  if (std::holds_alternative<KStop>(data)) return k;

  if (const auto* kc = std::get_if<KCall>(&data)) {
    auto caller = rename_in_function(old_name, new_name, kc->caller);
    if (!caller.ok()) return caller.error();
    SegMode inner = seg_mode_for_function(old_name, new_name, *kc->caller);
    auto resume = seg_ctx(old_name, new_name, inner, kc->resume);
    if (!resume.ok()) return resume.error();
    auto next = seg_cont(old_name, new_name, inner, k->next);
    if (!next.ok()) return next;
    return make_cont(KCall{caller.take(), kc->env, resume.take()},
                     next.take());
  }

  auto next = seg_cont(old_name, new_name, mode, k->next);
  if (!next.ok()) return next;

  return std::visit(
      [&](const auto& n) -> RenameResult<Cont> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, KDo> || std::is_same_v<T, KReturn>) {
          return make_cont(n, next.take());
        } else if constexpr (std::is_same_v<T, KSeq>) {
          auto s = seg_stmt(old_name, new_name, mode, n.next);
          if (!s.ok()) return s.error();
          return make_cont(KSeq{s.take()}, next.take());
        } else if constexpr (std::is_same_v<T, KIf>) {
          auto a = seg_stmt(old_name, new_name, mode, n.then_branch);
          if (!a.ok()) return a.error();
          auto b = seg_stmt(old_name, new_name, mode, n.else_branch);
          if (!b.ok()) return b.error();
          return make_cont(KIf{a.take(), b.take()}, next.take());
        } else if constexpr (std::is_same_v<T, KWhile>) {
          auto c = seg_expr(old_name, new_name, mode, n.cond);
          if (!c.ok()) return c.error();
          auto b = seg_stmt(old_name, new_name, mode, n.body);
          if (!b.ok()) return b.error();
          return make_cont(KWhile{c.take(), b.take()}, next.take());
        } else {
          return k;  // KStop and KCall are handled above
        }
      },
      data);
}

}  // namespace

RenameResult<State> rename_state(Ident old_name, Ident new_name,
                                 const State& st) {
  using R = RenameResult<State>;
  return std::visit(
      [&](const auto& s) -> R {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StStuck>) {
          return State{s, st.ext_calls};
        } else if constexpr (std::is_same_v<T, StReturned>) {
          auto ge = rename_global_env(old_name, new_name, s.ge);
          if (!ge.ok()) return ge.error();
          // A returned state's continuation starts at a call boundary, so
          // there is no leading segment; treat any unexpected frames as
          // unbound.
          auto k = seg_cont(old_name, new_name, SegMode::Rename, s.k);
          if (!k.ok()) return k.error();
          return State{StReturned{s.value, k.take(), ge.take()},
                       st.ext_calls};
        } else if constexpr (std::is_same_v<T, StRunStmt>) {
          auto ge = rename_global_env(old_name, new_name, s.ge);
          if (!ge.ok()) return ge.error();
          auto fn = rename_in_function(old_name, new_name, s.fn);
          if (!fn.ok()) return fn.error();
          SegMode mode = seg_mode_for_env(old_name, new_name, s.env);
          auto stmt = seg_stmt(old_name, new_name, mode, s.stmt);
          if (!stmt.ok()) return stmt.error();
          auto k = seg_cont(old_name, new_name, mode, s.k);
          if (!k.ok()) return k.error();
          return State{
              StRunStmt{stmt.take(), k.take(), s.env, fn.take(), ge.take()},
              st.ext_calls};
        } else {
          static_assert(std::is_same_v<T, StRunExpr>);
          auto ge = rename_global_env(old_name, new_name, s.ge);
          if (!ge.ok()) return ge.error();
          auto fn = rename_in_function(old_name, new_name, s.fn);
          if (!fn.ok()) return fn.error();
          SegMode mode = seg_mode_for_env(old_name, new_name, s.env);
          auto ctx = seg_ctx(old_name, new_name, mode, s.ctx);
          if (!ctx.ok()) return ctx.error();
          auto focus = seg_expr(old_name, new_name, mode, s.focus);
          if (!focus.ok()) return focus.error();
          auto k = seg_cont(old_name, new_name, mode, s.k);
          if (!k.ok()) return k.error();
          return State{StRunExpr{ctx.take(), focus.take(), k.take(), s.env,
                                 fn.take(), ge.take()},
                       st.ext_calls};
        }
      },
      st.v);
}

namespace {

// Cheap fingerprint used only to deduplicate visited states during the
// lockstep exploration; transition checks use real structural equality.
std::string state_key(const State& st) {
  std::ostringstream out;
  out << st.ext_calls << '|' << st.v.index() << '|';
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StStuck>) {
          out << s.reason;
          return;
        } else {
          if constexpr (std::is_same_v<T, StRunStmt>) {
            out << print_stmt(*s.stmt) << '|';
            for (const auto& [name, val] : s.env) {
              out << name.id << '=' << (val ? std::to_string(*val) : "?")
                  << ',';
            }
          } else if constexpr (std::is_same_v<T, StRunExpr>) {
            out << print_expr(*plug(s.ctx, s.focus)) << '@';
            for (const CtxFrame& f : s.ctx) out << f.index();
            out << '|';
            for (const auto& [name, val] : s.env) {
              out << name.id << '=' << (val ? std::to_string(*val) : "?")
                  << ',';
            }
          } else {
            out << "ret " << s.value << '|';
          }
          const Cont* k = nullptr;
          if constexpr (std::is_same_v<T, StRunStmt> ||
                        std::is_same_v<T, StRunExpr> ||
                        std::is_same_v<T, StReturned>) {
            k = &s.k;
            out << '|';
            for (Cont c = *k; c; c = c->next) {
              out << c->data.index() << ':';
              if (const auto* seq = std::get_if<KSeq>(&c->data)) {
                out << print_stmt(*seq->next);
              } else if (const auto* kc = std::get_if<KCall>(&c->data)) {
                out << kc->resume.size() << ';';
                for (const auto& [name, val] : kc->env) {
                  out << name.id << '='
                      << (val ? std::to_string(*val) : "?") << ',';
                }
              }
            }
            out << '|';
            for (const auto& [name, slot] : s.ge.vars) {
              out << name.id << '=' << slot.value << ',';
            }
          }
        }
      },
      st.v);
  return out.str();
}

}  // namespace

Result<LockstepReport, RenameError> check_lockstep(Ident old_name,
                                                   Ident new_name,
                                                   const Program& p,
                                                   const ExtCallModel& model,
                                                   int max_transitions) {
  auto renamed = rename_global_var(old_name, new_name, p);
  if (!renamed.ok()) return renamed.error();

  LockstepReport report;
  auto init = initial_state(p);
  if (!init.ok()) return report;  // nothing to explore without a main

  Interp interp(model, EvalMode::Exhaustive);

  std::deque<State> worklist;
  std::unordered_set<std::string> visited;
  worklist.push_back(init.value());
  visited.insert(state_key(init.value()));

  auto fail = [&](const State& st, const Trace& events, const State& to,
                  const std::string& what) {
    report.pass = false;
    std::ostringstream out;
    out << what << "\n  from: " << describe_state(st);
    if (!events.empty()) out << "\n  event: " << serialize_event(events[0]);
    out << "\n  to: " << describe_state(to);
    report.counterexample = out.str();
  };

  while (!worklist.empty() && report.pass &&
         report.transitions_checked < max_transitions) {
    State st = std::move(worklist.front());
    worklist.pop_front();

    auto renamed_from = rename_state(old_name, new_name, st);
    if (!renamed_from.ok()) {
      fail(st, {}, st,
           "renaming a reachable state failed: " + renamed_from.error().message);
      break;
    }
    std::vector<Transition> renamed_succ = interp.step(renamed_from.value());

    for (const Transition& t : interp.step(st)) {
      if (report.transitions_checked >= max_transitions) break;
      ++report.transitions_checked;

      auto renamed_to = rename_state(old_name, new_name, t.to);
      if (!renamed_to.ok()) {
        fail(st, t.events, t.to,
             "renaming a successor state failed: " +
                 renamed_to.error().message);
        break;
      }
      auto renamed_events = rename_trace(old_name, new_name, t.events);
      if (!renamed_events.ok()) {
        fail(st, t.events, t.to,
             "renaming the transition trace failed: " +
                 renamed_events.error().message);
        break;
      }

      bool matched = false;
      for (const Transition& rt : renamed_succ) {
        if (rt.events == renamed_events.value() && rt.to == renamed_to.value()) {
          matched = true;
          break;
        }
      }
      if (!matched) {
        fail(st, t.events, t.to,
             "renamed transition is not a step of the renamed program");
        break;
      }

      if (!is_stuck(t.to) && !is_final(t.to)) {
        std::string key = state_key(t.to);
        if (visited.insert(std::move(key)).second) {
          worklist.push_back(t.to);
        }
      }
    }
  }

  return report;
}

}  // namespace minic
