#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace minic {

/// Interned identifier. Equal source texts map to equal ids and vice versa;
/// ids start at 1. All syntax trees and runtime structures refer to
/// identifiers only through this type.
struct Ident {
  uint32_t id = 0;

  friend auto operator<=>(const Ident&, const Ident&) = default;
};

/// True iff `text` is lexically a C identifier ([A-Za-z_][A-Za-z0-9_]*).
bool is_identifier_text(std::string_view text);

/// Interns `text`, returning the existing id when the text was seen before.
/// Throws std::invalid_argument unless `text` is lexically a C identifier.
/// Safe to call from multiple threads; interning is linearizable.
Ident intern(std::string_view text);

/// Source text of an interned identifier. The reference stays valid for the
/// lifetime of the process.
const std::string& name_of(Ident id);

}  // namespace minic

template <>
struct std::hash<minic::Ident> {
  size_t operator()(const minic::Ident& i) const noexcept {
    return std::hash<uint32_t>()(i.id);
  }
};
