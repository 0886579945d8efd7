#include "minic/keywords.hpp"

#include <algorithm>
#include <array>

namespace minic {

namespace {

// ISO C99 6.4.1, all 37 keywords.
constexpr std::array<std::string_view, 37> kC99Keywords = {
    "_Bool",    "_Complex", "_Imaginary", "auto",     "break",
    "case",     "char",     "const",      "continue", "default",
    "do",       "double",   "else",       "enum",     "extern",
    "float",    "for",      "goto",       "if",       "inline",
    "int",      "long",     "register",   "restrict", "return",
    "short",    "signed",   "sizeof",     "static",   "struct",
    "switch",   "typedef",  "union",      "unsigned", "void",
    "volatile", "while"};

}  // namespace

bool is_c_keyword(std::string_view text) {
  return std::binary_search(kC99Keywords.begin(), kC99Keywords.end(), text);
}

}  // namespace minic
