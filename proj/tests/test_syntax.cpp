#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "minic/keywords.hpp"
#include "minic/parser.hpp"
#include "minic/printer.hpp"

using namespace minic;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(MINIC_FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Program parsed(const std::string& text) {
  auto r = parse_text(text);
  REQUIRE(r.ok());
  return r.take();
}

}  // namespace

TEST_CASE("the shadowing listing parses into the expected definitions") {
  Program p = parsed(fixture("shadow_capture.c"));
  REQUIRE(p.defs.size() == 2);
  CHECK(p.defs[0].first == intern("x"));
  CHECK(std::holds_alternative<GlobVar>(p.defs[0].second));
  CHECK(p.defs[1].first == intern("f"));
  CHECK(std::holds_alternative<FunctionPtr>(p.defs[1].second));
  CHECK(p.main == intern("main"));
}

TEST_CASE("an empty file is a valid empty program") {
  Program p = parsed("");
  CHECK(p.defs.empty());
}

TEST_CASE("the parser never uniquifies identifiers") {
  // A global x and a parameter x must produce the same Ident, so shadowing
  // stays visible in the tree.
  Program p = parsed(fixture("free_occurrence.c"));
  const auto& f = *std::get<FunctionPtr>(p.defs[1].second);
  REQUIRE(f.params.size() == 1);
  CHECK(f.params[0].first == p.defs[0].first);
}

TEST_CASE("lexical errors carry a position") {
  auto r = parse_text("int 2x;\n");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().line == 1);
  CHECK(r.error().column == 5);

  auto r2 = parse_text("int a;\nint @;\n");
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.error().line == 2);
}

TEST_CASE("reserved keywords outside the subset are rejected") {
  CHECK_FALSE(parse_text("int for;\n").ok());
  CHECK_FALSE(parse_text("int f(void) {\n  goto done;\n}\n").ok());
}

TEST_CASE("declaration restrictions") {
  CHECK_FALSE(parse_text("int f(void) {\n  int t = 1;\n  return t;\n}\n").ok());
  CHECK_FALSE(parse_text("int f(void) {\n  t = 1;\n  int t;\n}\n").ok());
  CHECK_FALSE(parse_text("int f(void) {\n  volatile int t;\n}\n").ok());
  CHECK_FALSE(parse_text("volatile int f(void) {\n  return 0;\n}\n").ok());
  CHECK_FALSE(parse_text("void v;\n").ok());
  CHECK_FALSE(parse_text("int f(void) {\n  { int t; }\n}\n").ok());
}

TEST_CASE("assignment targets must be variables") {
  auto r = parse_text("int f(void) {\n  1 = 2;\n}\n");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().message == "assignment target must be a variable");
  CHECK(parse_text("int f(int a, int b) {\n  a = b = 3;\n}\n").ok());
}

TEST_CASE("global initializers stay in the constant subset") {
  CHECK_FALSE(parse_text("int x = f();\n").ok());
  CHECK_FALSE(parse_text("int y;\nint x = (y = 1);\n").ok());
  CHECK(parse_text("int y;\nint x = y + 2 * 3;\n").ok());
}

TEST_CASE("C99 keyword list") {
  CHECK(is_c_keyword("while"));
  CHECK(is_c_keyword("volatile"));
  CHECK(is_c_keyword("_Bool"));
  CHECK(is_c_keyword("restrict"));
  CHECK(is_c_keyword("inline"));
  CHECK_FALSE(is_c_keyword("y"));
  CHECK_FALSE(is_c_keyword("printf"));
  CHECK_FALSE(is_c_keyword("bool"));  // C99 spells it _Bool
}

TEST_CASE("pretty-printing is deterministic and normative") {
  Program p = parsed(
      "volatile int v=3;int x;\n"
      "int f(int a,int b){int t;t=a;if(a<b){t=b;}while(t>0){t=t-1;}return "
      "t+x;}\n");
  const char* expected =
      "volatile int v = 3;\n"
      "int x;\n"
      "int f(int a, int b) {\n"
      "  int t;\n"
      "  t = a;\n"
      "  if (a < b) {\n"
      "    t = b;\n"
      "  }\n"
      "  while (t > 0) {\n"
      "    t = t - 1;\n"
      "  }\n"
      "  return t + x;\n"
      "}\n";
  CHECK(pretty_print(p) == expected);
}

TEST_CASE("fixtures round-trip through the printer") {
  for (const char* name :
       {"shadow_capture.c", "shadow_ok.c", "free_occurrence.c",
        "hoisted_blocks.c", "volatile_global.c", "lib_global.c",
        "printf_pair.c", "printf_split.c"}) {
    CAPTURE(name);
    Program p = parsed(fixture(name));
    Program again = parsed(pretty_print(p));
    CHECK(p == again);
  }
}

TEST_CASE("volatile survives the round trip") {
  Program p = parsed("volatile int v = 1;\n");
  Program q = parsed(pretty_print(p));
  CHECK(defines_volatile_globvar(intern("v"), q));
}

TEST_CASE("printing empty bodies and else branches") {
  Program p = parsed("int f(void) {\n}\n");
  CHECK(pretty_print(p) == "int f(void) {\n}\n");
  Program q = parsed("int g(int a) {\n  if (a) {\n  } else {\n    a = 1;\n  }\n}\n");
  CHECK(parsed(pretty_print(q)) == q);
}

TEST_CASE("operator precedence round-trips") {
  for (const char* text : {
           "int f(int a, int b) {\n  return a + b * 2;\n}\n",
           "int f(int a, int b) {\n  return (a + b) * 2;\n}\n",
           "int f(int a, int b) {\n  return a - (b - 1);\n}\n",
           "int f(int a, int b) {\n  return a < b == 0;\n}\n",
           "int f(int a, int b) {\n  a = b = a + 1;\n}\n",
           "int f(int a) {\n  return -(-a) + !a;\n}\n",
           "int f(int a) {\n  return g(a = 2, -a);\n}\n",
       }) {
    CAPTURE(text);
    Program p = parsed(text);
    CHECK(parsed(pretty_print(p)) == p);
  }
}

TEST_CASE("hand-built trees print and reparse") {
  Ident a = intern("a");
  Function f;
  f.ret = CType::Int;
  f.params = {{a, CType::Int}};
  f.body = make_return(make_unop(UnOp::Neg, make_unop(UnOp::Neg, make_var(a))));
  Program p;
  p.main = intern("main");
  p.defs.emplace_back(intern("f"),
                      GlobDef{std::make_shared<const Function>(std::move(f))});
  CHECK(parsed(pretty_print(p)) == p);
}

TEST_CASE("comments are skipped, not preserved") {
  Program p = parsed("int x; // trailing\n/* block\ncomment */int y;\n");
  CHECK(p.defs.size() == 2);
  CHECK_FALSE(parse_text("/* unterminated").ok());
}
