#include "minic/trace.hpp"

#include <sstream>
#include <tuple>

namespace minic {

namespace {

// (kind tag, ident, value payload, args) — enough for a total order.
std::tuple<int, uint32_t, long long, const std::vector<long long>*> event_key(
    const Event& ev) {
  static const std::vector<long long> kNoArgs;
  return std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, ExtCallEvent>) {
          return std::make_tuple(0, e.name.id, e.result, &e.args);
        } else if constexpr (std::is_same_v<T, VolLoadEvent>) {
          return std::make_tuple(1, e.var.id, e.value, &kNoArgs);
        } else if constexpr (std::is_same_v<T, VolStoreEvent>) {
          return std::make_tuple(2, e.var.id, e.value, &kNoArgs);
        } else if constexpr (std::is_same_v<T, GlobReadEvent>) {
          return std::make_tuple(3, e.var.id, e.value, &kNoArgs);
        } else {
          return std::make_tuple(4, e.var.id, e.value, &kNoArgs);
        }
      },
      ev);
}

bool event_less(const Event& a, const Event& b) {
  auto [ka, ia, va, aa] = event_key(a);
  auto [kb, ib, vb, ab] = event_key(b);
  return std::tie(ka, ia, va, *aa) < std::tie(kb, ib, vb, *ab);
}

}  // namespace

bool BehaviorLess::operator()(const Behavior& a, const Behavior& b) const {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.code != b.code) return a.code < b.code;
  if (a.trace.size() != b.trace.size()) return a.trace.size() < b.trace.size();
  for (size_t i = 0; i < a.trace.size(); ++i) {
    if (a.trace[i] == b.trace[i]) continue;
    return event_less(a.trace[i], b.trace[i]);
  }
  return false;
}

RenameResult<Event> rename_event(Ident old_name, Ident new_name,
                                 const Event& ev) {
  using R = RenameResult<Event>;
  return std::visit(
      [&](auto e) -> R {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, ExtCallEvent>) {
          auto name = rename_ident(old_name, new_name, e.name);
          if (!name.ok()) return name.error();
          e.name = name.value();
          return Event{e};
        } else {
          auto var = rename_ident(old_name, new_name, e.var);
          if (!var.ok()) return var.error();
          e.var = var.value();
          return Event{e};
        }
      },
      ev);
}

RenameResult<Trace> rename_trace(Ident old_name, Ident new_name,
                                 const Trace& t) {
  Trace out;
  out.reserve(t.size());
  for (const Event& ev : t) {
    auto rev = rename_event(old_name, new_name, ev);
    if (!rev.ok()) return rev.error();
    out.push_back(rev.take());
  }
  return out;
}

RenameResult<Behavior> rename_behavior(Ident old_name, Ident new_name,
                                       const Behavior& b) {
  auto trace = rename_trace(old_name, new_name, b.trace);
  if (!trace.ok()) return trace.error();
  Behavior out = b;
  out.trace = trace.take();
  return out;
}

RenameResult<bool> behaviors_equal_up_to_renaming(Ident old_name,
                                                  Ident new_name,
                                                  const BehaviorSet& original,
                                                  const BehaviorSet& renamed) {
  BehaviorSet forward;
  for (const Behavior& b : original) {
    auto rb = rename_behavior(old_name, new_name, b);
    if (!rb.ok()) return rb.error();
    forward.insert(rb.take());
  }
  if (forward != renamed) return false;

  BehaviorSet backward;
  for (const Behavior& b : renamed) {
    auto rb = rename_behavior(new_name, old_name, b);
    if (!rb.ok()) return rb.error();
    backward.insert(rb.take());
  }
  return backward == original;
}

std::string serialize_event(const Event& ev) {
  std::ostringstream out;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, ExtCallEvent>) {
          out << "EXTCALL " << name_of(e.name) << ' ';
          if (e.args.empty()) {
            out << '_';
          } else {
            for (size_t i = 0; i < e.args.size(); ++i) {
              if (i) out << ',';
              out << e.args[i];
            }
          }
          out << ' ' << e.result;
        } else if constexpr (std::is_same_v<T, VolLoadEvent>) {
          out << "VOLLOAD " << name_of(e.var) << ' ' << e.value;
        } else if constexpr (std::is_same_v<T, VolStoreEvent>) {
          out << "VOLSTORE " << name_of(e.var) << ' ' << e.value;
        } else if constexpr (std::is_same_v<T, GlobReadEvent>) {
          out << "GLOBREAD " << name_of(e.var) << ' ' << e.value;
        } else {
          out << "GLOBWRITE " << name_of(e.var) << ' ' << e.value;
        }
      },
      ev);
  return out.str();
}

std::string serialize_trace(const Trace& t) {
  std::string out;
  for (const Event& ev : t) {
    out += serialize_event(ev);
    out += '\n';
  }
  return out;
}

std::string describe_behavior(const Behavior& b) {
  switch (b.kind) {
    case BehaviorKind::Terminates:
      return "Terminates code=" + std::to_string(b.code);
    case BehaviorKind::GoesWrong:
      return "GoesWrong";
    case BehaviorKind::Unknown:
      return "Unknown";
  }
  return "?";
}

}  // namespace minic
