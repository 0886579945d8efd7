#include "minic/ident.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace minic {

namespace {

struct InternTable {
  std::mutex mu;
  std::unordered_map<std::string_view, Ident> by_text;
  std::deque<std::string> names;  // index id-1; deque keeps references stable
};

InternTable& table() {
  static InternTable t;
  return t;
}

}  // namespace

bool is_identifier_text(std::string_view text) {
  if (text.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_'))
    return false;
  for (char c : text.substr(1)) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  }
  return true;
}

Ident intern(std::string_view text) {
  if (!is_identifier_text(text)) {
    throw std::invalid_argument("malformed identifier text: '" +
                                std::string(text) + "'");
  }
  InternTable& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.by_text.find(text);
  if (it != t.by_text.end()) return it->second;
  t.names.emplace_back(text);
  Ident id{static_cast<uint32_t>(t.names.size())};
  t.by_text.emplace(std::string_view(t.names.back()), id);
  return id;
}

const std::string& name_of(Ident id) {
  InternTable& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  if (id.id == 0 || id.id > t.names.size()) {
    throw std::out_of_range("identifier id not interned");
  }
  return t.names[id.id - 1];
}

}  // namespace minic
