#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "minic/ast.hpp"
#include "minic/rename.hpp"
#include "minic/result.hpp"
#include "minic/trace.hpp"

namespace minic {

struct EvalError {
  std::string message;
};

struct GlobalSlot {
  long long value = 0;
  bool is_volatile = false;
  friend bool operator==(const GlobalSlot&, const GlobalSlot&) = default;
};

/// Runtime view of the program's globals: variable slots with their current
/// values plus the function table. Carried inside every state, so states are
/// self-contained snapshots.
struct GlobalEnv {
  std::map<Ident, GlobalSlot> vars;
  std::map<Ident, FunctionPtr> funcs;
  Ident main;
};

bool operator==(const GlobalEnv& a, const GlobalEnv& b);

/// Remaps the old variable slot to the new name and propagates the renaming
/// into every function body, with the same collision checks the syntactic
/// engine performs.
RenameResult<GlobalEnv> rename_global_env(Ident old_name, Ident new_name,
                                          const GlobalEnv& ge);

/// Oracles for functions the program does not define. A configuration is
/// EXT-compliant for a renaming iff no oracle reads a global and no oracle
/// name collides with either of the two names involved.
class ExtCallModel {
 public:
  enum class Kind { Pure, ReadsGlobal };
  struct Entry {
    Kind kind = Kind::Pure;
    Ident global;
  };

  void add_pure(Ident name) { entries_[name] = Entry{Kind::Pure, {}}; }
  void add_reads_global(Ident name, Ident global) {
    entries_[name] = Entry{Kind::ReadsGlobal, global};
  }
  const Entry* find(Ident name) const;
  bool compliant_for(Ident old_name, Ident new_name) const;
  const std::map<Ident, Entry>& entries() const { return entries_; }

  /// printf as a pure oracle returning the number of characters written,
  /// one per argument.
  static ExtCallModel default_model();

 private:
  std::map<Ident, Entry> entries_;
};

// Evaluation context: a first-order path from the root of an expression to
// the hole under reduction.
struct CtxUnop {
  UnOp op;
};
struct CtxBinopL {
  BinOp op;
  ExprPtr rhs;
};
struct CtxBinopR {
  BinOp op;
  ExprPtr lhs;
};
struct CtxAssign {
  ExprPtr target;
};
struct CtxCallArg {
  Ident callee;
  std::vector<ExprPtr> args;  // args[index] is the hole
  size_t index = 0;
};

using CtxFrame =
    std::variant<CtxUnop, CtxBinopL, CtxBinopR, CtxAssign, CtxCallArg>;
using EvalCtx = std::vector<CtxFrame>;

ExprPtr plug(const EvalCtx& ctx, ExprPtr focus);
bool equal(const EvalCtx& a, const EvalCtx& b);

// Continuations: a linear frame stack. Call frames delimit scope segments;
// the binders governing a segment are those of the function stored in the
// call frame that opens it.
struct Frame;
using Cont = std::shared_ptr<const Frame>;

using LocalEnv = std::map<Ident, std::optional<long long>>;

struct KStop {};
struct KDo {};
struct KSeq {
  StmtPtr next;
};
struct KIf {
  StmtPtr then_branch;
  StmtPtr else_branch;
};
struct KWhile {
  ExprPtr cond;
  StmtPtr body;
};
struct KReturn {};
struct KCall {
  FunctionPtr caller;
  LocalEnv env;
  EvalCtx resume;
};

using FrameData = std::variant<KStop, KDo, KSeq, KIf, KWhile, KReturn, KCall>;

struct Frame {
  FrameData data;
  Cont next;  // null only under KStop
};

Cont make_cont(FrameData data, Cont next);
Cont stop_cont();
bool equal(const Cont& a, const Cont& b);

// Fixed stuck diagnostics. They deliberately carry no identifier names so
// that corresponding stuck states of a program and its renamed version
// compare equal.
namespace stuck_reason {
inline constexpr const char* kUndefinedVar = "read of undefined variable";
inline constexpr const char* kUninitLocal =
    "read of uninitialized local variable";
inline constexpr const char* kFnAsValue = "function name used as a value";
inline constexpr const char* kAssignUndefined =
    "assignment to undefined variable";
inline constexpr const char* kAssignToFn = "assignment to a function name";
inline constexpr const char* kAssignNonLvalue = "assignment to non-lvalue";
inline constexpr const char* kUndefinedFn = "call of undefined function";
inline constexpr const char* kCalleeNotFn =
    "called identifier is not a function";
inline constexpr const char* kWrongArgs = "wrong number of arguments";
inline constexpr const char* kDivZero = "division by zero";
inline constexpr const char* kDivOverflow = "division overflow";
inline constexpr const char* kExtMissingGlobal =
    "external function accessed a missing global";
inline constexpr const char* kBadInit =
    "global initializer failed to evaluate";
inline constexpr const char* kIrreducible = "expression cannot be reduced";
}  // namespace stuck_reason

struct StRunStmt {
  StmtPtr stmt;
  Cont k;
  LocalEnv env;
  FunctionPtr fn;
  GlobalEnv ge;
};

struct StRunExpr {
  EvalCtx ctx;
  ExprPtr focus;
  Cont k;
  LocalEnv env;
  FunctionPtr fn;
  GlobalEnv ge;
};

struct StReturned {
  long long value = 0;
  Cont k;  // already stripped to a call frame or stop
  GlobalEnv ge;
};

struct StStuck {
  std::string reason;
};

struct State {
  std::variant<StRunStmt, StRunExpr, StReturned, StStuck> v;
  int ext_calls = 0;  // call index fed to external oracles
};

bool operator==(const State& a, const State& b);
bool is_final(const State& st);
bool is_stuck(const State& st);

/// Short one-line description for diagnostics.
std::string describe_state(const State& st);

enum class EvalMode { Deterministic, Exhaustive };

struct Transition {
  Trace events;  // zero or one event per step
  State to;
};

/// The step relation. Deterministic mode reduces the leftmost redex;
/// exhaustive mode branches over every effectful redex position of the
/// focused expression (pure arithmetic commutes and is never branched on).
class Interp {
 public:
  Interp(ExtCallModel model, EvalMode mode)
      : model_(std::move(model)), mode_(mode) {}

  std::vector<Transition> step(const State& st) const;

  const ExtCallModel& model() const { return model_; }
  EvalMode mode() const { return mode_; }

 private:
  ExtCallModel model_;
  EvalMode mode_;
};

/// Builds the global environment (initializers evaluated in definition
/// order, uninitialized globals default to 0) and enters main with no
/// arguments. A failing initializer yields a stuck state; a missing or
/// non-function main is an error.
Result<State, EvalError> initial_state(const Program& p);

/// All maximal behaviors reachable within the step budget.
Result<BehaviorSet, EvalError> run(const Program& p, const ExtCallModel& model,
                                   EvalMode mode, int budget);

/// State correspondence between a program run and the run of its renamed
/// version. Continuation segments opened by a call frame whose function
/// binds one of the names are left untouched, exactly like the syntactic
/// engine leaves such function bodies untouched; the first segment takes its
/// binding information from the state's own environment.
RenameResult<State> rename_state(Ident old_name, Ident new_name,
                                 const State& st);

struct LockstepReport {
  bool pass = true;
  int transitions_checked = 0;
  std::string counterexample;  // empty when pass
};

/// Explores reachable transitions of p (exhaustive successors, breadth
/// first, up to max_transitions) and verifies each one is matched, after
/// renaming states and events, by a transition of the renamed program.
Result<LockstepReport, RenameError> check_lockstep(Ident old_name,
                                                   Ident new_name,
                                                   const Program& p,
                                                   const ExtCallModel& model,
                                                   int max_transitions);

}  // namespace minic
