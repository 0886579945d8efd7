#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minic/ast.hpp"
#include "minic/result.hpp"

namespace minic {

struct RenameError {
  std::string message;
  std::optional<Ident> location;  // definition the error was raised in
};

template <class T>
using RenameResult = Result<T, RenameError>;

// Normative diagnostic catalog. Golden tests match these byte for byte, so
// they must never be reworded.
namespace rename_msg {
inline constexpr const char* kKeyword = "target is a C keyword";
inline constexpr const char* kOldIsMain = "x equals main";
inline constexpr const char* kNewIsMain = "y equals main";
inline constexpr const char* kOldNotGlobal =
    "x not declared as a global variable";
inline constexpr const char* kOldIsFunction = "x is declared as a function";
inline constexpr const char* kOldInOwnInit =
    "x occurs in its own initialization";
inline constexpr const char* kNewAlreadyOccurs =
    "replacing identifier already occurs";
inline constexpr const char* kVolatile = "variable is volatile";
inline constexpr const char* kProgramDefinesNew = "program defines y";
inline constexpr const char* kNewOccursInFunction =
    "Replacing identifier occurring in function.";
inline constexpr const char* kWouldShadow =
    "This renaming would introduce an undesired shadowing.";
}  // namespace rename_msg

/// Deliberately weakened engine variants. The harness meta-tests enable one
/// at a time to verify that the property suite detects the resulting bugs;
/// nothing outside tests ever passes a value other than None.
enum class EngineMutation {
  None,
  DropShadowedBodyCheck,   // old name bound: skip "new name occurs in body"
  DropCaptureCheck,        // new name bound: skip "old name occurs in body"
  SkipVolatileCheck,       // allow renaming volatile globals
  SkipInitCollisionCheck,  // skip "new name occurs in the initializer"
};

/// A validated rename request; construction refuses equal names.
struct RenameRequest {
  Ident old_name;
  Ident new_name;

  static std::optional<RenameRequest> make(Ident old_name, Ident new_name);
};

/// Renames one identifier occurrence: old becomes new, meeting the new name
/// is a collision, anything else passes through.
RenameResult<Ident> rename_ident(Ident old_name, Ident new_name, Ident i);

RenameResult<ExprPtr> rename_in_expr(Ident old_name, Ident new_name,
                                     const ExprPtr& e);

/// Propagates the renaming to every Var leaf and call callee in s.
RenameResult<StmtPtr> rename_in_statement(Ident old_name, Ident new_name,
                                          const StmtPtr& s);

/// Renames the body unconditionally; parameters, locals and return type are
/// kept as they are.
RenameResult<FunctionPtr> rename_function_body(Ident old_name, Ident new_name,
                                               const FunctionPtr& f);

/// The four-way shadowing analysis:
///  - f binds both names: body untouched.
///  - f binds the old name only: body untouched, but the new name occurring
///    in the body is an error (it would silently legalize a free occurrence).
///  - f binds the new name only: body untouched, but the old name occurring
///    in the body is an error (capture).
///  - f binds neither: rename the body.
RenameResult<FunctionPtr> rename_in_function(
    Ident old_name, Ident new_name, const FunctionPtr& f,
    EngineMutation mutation = EngineMutation::None);

/// Per-definition dispatch: the definition of the old name is itself renamed
/// (after the not-a-function, initializer and volatile checks), a definition
/// of the new name is a collision, everything else has the renaming
/// propagated into its content.
RenameResult<std::pair<Ident, GlobDef>> rename_in_definition(
    Ident old_name, Ident new_name, const std::pair<Ident, GlobDef>& def,
    EngineMutation mutation = EngineMutation::None);

/// The whole-program transformation: top-level checks (names differ from
/// main, the old name is a declared global variable), then every definition
/// in order; the first error aborts.
RenameResult<Program> rename_global_var(
    Ident old_name, Ident new_name, const Program& p,
    EngineMutation mutation = EngineMutation::None);

/// True iff renaming old_name into new_name inside f would capture: f binds
/// new_name, does not bind old_name, and old_name appears in the body.
bool covers(Ident new_name, Ident old_name, const Function& f);

/// No function of the program is subject to capture.
bool no_cover_in_program(Ident old_name, Ident new_name, const Program& p);

struct PreconditionClause {
  std::string name;
  bool holds;
};

struct PreconditionReport {
  std::vector<PreconditionClause> clauses;
  bool pass() const;
};

/// Evaluates the decidable clauses that together guarantee the rename
/// succeeds. The report lists every clause; it never fails itself.
PreconditionReport check_rename_precondition(Ident old_name, Ident new_name,
                                             const Program& p);

}  // namespace minic
