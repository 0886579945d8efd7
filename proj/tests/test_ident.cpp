#include <stdexcept>
#include <thread>
#include <vector>

#include "doctest.h"
#include "minic/ident.hpp"

using namespace minic;

TEST_CASE("interning is idempotent and injective") {
  Ident a1 = intern("x");
  Ident a2 = intern("x");
  CHECK(a1 == a2);
  CHECK(intern("x") != intern("y"));
  CHECK(a1.id >= 1);
}

TEST_CASE("interning round-trips the text") {
  for (const char* text : {"x", "y", "_under", "a1b2", "veryLongName_42"}) {
    CHECK(name_of(intern(text)) == text);
  }
}

TEST_CASE("malformed identifier text is rejected") {
  CHECK_THROWS_AS(intern("2bad"), std::invalid_argument);
  CHECK_THROWS_AS(intern(""), std::invalid_argument);
  CHECK_THROWS_AS(intern("a b"), std::invalid_argument);
  CHECK_THROWS_AS(intern("a-b"), std::invalid_argument);
}

TEST_CASE("identifier syntax predicate") {
  CHECK(is_identifier_text("_x9"));
  CHECK(is_identifier_text("while"));  // lexically fine; keyword check is separate
  CHECK_FALSE(is_identifier_text("9x"));
  CHECK_FALSE(is_identifier_text(""));
}

TEST_CASE("concurrent interning is consistent") {
  std::vector<std::thread> threads;
  std::vector<Ident> results(8);
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&results, i] {
      for (int j = 0; j < 200; ++j) {
        results[i] = intern("shared_name");
        intern("name_" + std::to_string(j % 16));
      }
    });
  }
  for (auto& t : threads) t.join();
  for (int i = 1; i < 8; ++i) CHECK(results[i] == results[0]);
  CHECK(name_of(results[0]) == "shared_name");
}
