#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "minic/ident.hpp"
#include "minic/rename.hpp"
#include "minic/result.hpp"

namespace minic {

// Observable events. Reads and writes of non-volatile globals are recorded
// too, so a rename visibly rewrites traces on any program touching globals.
struct ExtCallEvent {
  Ident name;
  std::vector<long long> args;
  long long result = 0;
  friend bool operator==(const ExtCallEvent&, const ExtCallEvent&) = default;
};

struct VolLoadEvent {
  Ident var;
  long long value = 0;
  friend bool operator==(const VolLoadEvent&, const VolLoadEvent&) = default;
};

struct VolStoreEvent {
  Ident var;
  long long value = 0;
  friend bool operator==(const VolStoreEvent&, const VolStoreEvent&) = default;
};

struct GlobReadEvent {
  Ident var;
  long long value = 0;
  friend bool operator==(const GlobReadEvent&, const GlobReadEvent&) = default;
};

struct GlobWriteEvent {
  Ident var;
  long long value = 0;
  friend bool operator==(const GlobWriteEvent&, const GlobWriteEvent&) = default;
};

using Event =
    std::variant<ExtCallEvent, VolLoadEvent, VolStoreEvent, GlobReadEvent,
                 GlobWriteEvent>;

using Trace = std::vector<Event>;

enum class BehaviorKind { Terminates, GoesWrong, Unknown };

/// Unknown stands in for divergence and reaction: the step budget ran out
/// and `trace` is the prefix observed so far.
struct Behavior {
  BehaviorKind kind = BehaviorKind::Terminates;
  Trace trace;
  long long code = 0;  // exit code, meaningful for Terminates only

  friend bool operator==(const Behavior&, const Behavior&) = default;
};

/// Total order used to canonicalize behavior sets.
struct BehaviorLess {
  bool operator()(const Behavior& a, const Behavior& b) const;
};

using BehaviorSet = std::set<Behavior, BehaviorLess>;

RenameResult<Event> rename_event(Ident old_name, Ident new_name,
                                 const Event& ev);

/// Renames every identifier field equal to the old name; meeting the new
/// name anywhere in the trace is a collision.
RenameResult<Trace> rename_trace(Ident old_name, Ident new_name,
                                 const Trace& t);

/// Constructor and exit code are preserved; only the embedded trace changes.
RenameResult<Behavior> rename_behavior(Ident old_name, Ident new_name,
                                       const Behavior& b);

/// True iff renaming maps `original` onto `renamed` exactly, and the reverse
/// renaming maps `renamed` back onto `original` (double inclusion).
RenameResult<bool> behaviors_equal_up_to_renaming(Ident old_name,
                                                  Ident new_name,
                                                  const BehaviorSet& original,
                                                  const BehaviorSet& renamed);

/// One event per line: `KIND ident value`, with external calls carrying
/// their comma-joined arguments ('_' when empty) before the result.
std::string serialize_event(const Event& ev);
std::string serialize_trace(const Trace& t);

/// `Terminates code=N` / `GoesWrong` / `Unknown`.
std::string describe_behavior(const Behavior& b);

}  // namespace minic
