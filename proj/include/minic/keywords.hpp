#pragma once

#include <string_view>

namespace minic {

/// True iff `text` is one of the 37 ISO C99 keywords.
bool is_c_keyword(std::string_view text);

}  // namespace minic
