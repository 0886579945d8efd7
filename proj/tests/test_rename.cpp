#include <fstream>
#include <sstream>

#include "doctest.h"
#include "minic/parser.hpp"
#include "minic/printer.hpp"
#include "minic/rename.hpp"

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

FunctionPtr fn_of(const Program& p, const char* name) {
  for (const auto& [def_name, def] : p.defs) {
    if (def_name == intern(name) && std::holds_alternative<FunctionPtr>(def)) {
      return std::get<FunctionPtr>(def);
    }
  }
  REQUIRE(false);
  return nullptr;
}

const Ident X = intern("x");
const Ident Y = intern("y");
const Ident Z = intern("z");

}  // namespace

TEST_CASE("rename_ident: hit, collision, pass-through") {
  auto hit = rename_ident(X, Y, X);
  REQUIRE(hit.ok());
  CHECK(hit.value() == Y);

  auto collision = rename_ident(X, Y, Y);
  REQUIRE_FALSE(collision.ok());
  CHECK(collision.error().message == rename_msg::kNewAlreadyOccurs);

  auto other = rename_ident(X, Y, Z);
  REQUIRE(other.ok());
  CHECK(other.value() == Z);
}

TEST_CASE("rename_in_statement maps leaves and preserves shape") {
  StmtPtr s = fn_of(parsed("int f(void) {\n  return x + 1;\n}\n"), "f")->body;
  auto r = rename_in_statement(X, Y, s);
  REQUIRE(r.ok());
  CHECK(equal(r.value(), fn_of(parsed("int f(void) {\n  return y + 1;\n}\n"), "f")->body));

  auto bad = rename_in_statement(X, Y, fn_of(parsed("int f(void) {\n  return y;\n}\n"), "f")->body);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error().message == rename_msg::kNewAlreadyOccurs);

  auto skip = rename_in_statement(X, Y, make_skip());
  REQUIRE(skip.ok());
  CHECK(equal(skip.value(), make_skip()));
}

TEST_CASE("callee names participate in renaming") {
  StmtPtr s = fn_of(parsed("int f(void) {\n  return x(1);\n}\n"), "f")->body;
  auto r = rename_in_statement(X, Y, s);
  REQUIRE(r.ok());
  CHECK(equal(r.value(), fn_of(parsed("int f(void) {\n  return y(1);\n}\n"), "f")->body));

  auto bad = rename_in_statement(X, Y,
                                 fn_of(parsed("int f(void) {\n  return y(1);\n}\n"), "f")->body);
  CHECK_FALSE(bad.ok());
}

TEST_CASE("rename_function_body keeps everything but the body") {
  FunctionPtr g = fn_of(parsed("int g(void) {\n  return x;\n}\n"), "g");
  auto r = rename_function_body(X, Y, g);
  REQUIRE(r.ok());
  CHECK(equal(r.value()->body, fn_of(parsed("int g(void) {\n  return y;\n}\n"), "g")->body));
  CHECK(r.value()->params == g->params);

  auto bad = rename_function_body(X, Y, fn_of(parsed("int g(void) {\n  return y;\n}\n"), "g"));
  CHECK_FALSE(bad.ok());

  FunctionPtr empty = fn_of(parsed("int g(void) {\n}\n"), "g");
  auto same = rename_function_body(X, Y, empty);
  REQUIRE(same.ok());
  CHECK(equal(same.value(), empty));
}

TEST_CASE("rename_in_function: the four shadowing cases") {
  // binds new name, old occurs free: capture refused
  FunctionPtr capture = fn_of(parsed("int f(int y) {\n  return y + x;\n}\n"), "f");
  auto r1 = rename_in_function(X, Y, capture);
  REQUIRE_FALSE(r1.ok());
  CHECK(r1.error().message == rename_msg::kWouldShadow);

  // binds new name, old absent: untouched
  FunctionPtr harmless = fn_of(parsed("int f(int y) {\n  return y + 1;\n}\n"), "f");
  auto r2 = rename_in_function(X, Y, harmless);
  REQUIRE(r2.ok());
  CHECK(equal(r2.value(), harmless));

  // binds old name, new occurs free: would legalize an ill-formed program
  FunctionPtr footnote = fn_of(parsed("int f(int x) {\n  return y;\n}\n"), "f");
  auto r3 = rename_in_function(X, Y, footnote);
  REQUIRE_FALSE(r3.ok());
  CHECK(r3.error().message == rename_msg::kNewOccursInFunction);

  // binds both: double shadow, untouched
  FunctionPtr both = fn_of(parsed("int f(int x) {\n  int y;\n  return x;\n}\n"), "f");
  auto r4 = rename_in_function(X, Y, both);
  REQUIRE(r4.ok());
  CHECK(equal(r4.value(), both));

  // binds neither: body renamed
  FunctionPtr open = fn_of(parsed("int f(void) {\n  return x;\n}\n"), "f");
  auto r5 = rename_in_function(X, Y, open);
  REQUIRE(r5.ok());
  CHECK(equal(r5.value()->body, fn_of(parsed("int f(void) {\n  return y;\n}\n"), "f")->body));
}

TEST_CASE("rename_in_definition on the renamed variable itself") {
  Program p = parsed("int x = 1;\n");
  auto r = rename_in_definition(X, Y, p.defs[0]);
  REQUIRE(r.ok());
  CHECK(r.value().first == Y);
  CHECK(std::get<GlobVar>(r.value().second) == std::get<GlobVar>(p.defs[0].second));
}

TEST_CASE("rename_in_definition checks run in order: function, own init, new-name init, volatile") {
  // x declared as a function
  Program pf = parsed("int x(void) {\n  return 0;\n}\n");
  auto rf = rename_in_definition(X, Y, pf.defs[0]);
  REQUIRE_FALSE(rf.ok());
  CHECK(rf.error().message == rename_msg::kOldIsFunction);

  // x in its own initialization
  Program ps = parsed("int x = x + 1;\n");
  auto rs = rename_in_definition(X, Y, ps.defs[0]);
  REQUIRE_FALSE(rs.ok());
  CHECK(rs.error().message == rename_msg::kOldInOwnInit);

  // new name in the initialization
  Program py = parsed("int x = y;\n");
  auto ry = rename_in_definition(X, Y, py.defs[0]);
  REQUIRE_FALSE(ry.ok());
  CHECK(ry.error().message == rename_msg::kNewAlreadyOccurs);

  // volatile
  Program pv = parsed("volatile int x;\n");
  auto rv = rename_in_definition(X, Y, pv.defs[0]);
  REQUIRE_FALSE(rv.ok());
  CHECK(rv.error().message == rename_msg::kVolatile);

  // own-init check precedes the new-name check
  Program pboth = parsed("volatile int x = x + y;\n");
  auto rboth = rename_in_definition(X, Y, pboth.defs[0]);
  REQUIRE_FALSE(rboth.ok());
  CHECK(rboth.error().message == rename_msg::kOldInOwnInit);
}

TEST_CASE("a definition of the new name is a collision") {
  Program p = parsed("int y = 1;\n");
  auto r = rename_in_definition(X, Y, p.defs[0]);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().message == rename_msg::kProgramDefinesNew);
}

TEST_CASE("other definitions have the renaming propagated") {
  Program p = parsed("int g = x + 1;\n");
  auto r = rename_in_definition(X, Y, p.defs[0]);
  REQUIRE(r.ok());
  Program expected = parsed("int g = y + 1;\n");
  CHECK(equal(r.value().second, expected.defs[0].second));
}

TEST_CASE("rename_global_var on the paper's two listings") {
  Program capture = parsed(fixture("shadow_capture.c"));
  auto r1 = rename_global_var(X, Y, capture);
  REQUIRE_FALSE(r1.ok());
  CHECK(r1.error().message == rename_msg::kWouldShadow);

  Program ok = parsed(fixture("shadow_ok.c"));
  auto r2 = rename_global_var(X, Y, ok);
  REQUIRE(r2.ok());
  Program expected = parsed("int y;\nint f(int y) {\n  return y + 1;\n}\n");
  CHECK(r2.value() == expected);
}

TEST_CASE("top-level checks") {
  Program p = parsed("int x;\nint main(void) {\n  return 0;\n}\n");
  auto r1 = rename_global_var(intern("main"), Y, p);
  REQUIRE_FALSE(r1.ok());
  CHECK(r1.error().message == rename_msg::kOldIsMain);

  auto r2 = rename_global_var(X, intern("main"), p);
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.error().message == rename_msg::kNewIsMain);

  auto r3 = rename_global_var(Z, Y, p);
  REQUIRE_FALSE(r3.ok());
  CHECK(r3.error().message == rename_msg::kOldNotGlobal);
}

TEST_CASE("definition order and the first error win") {
  Program p = parsed("int x;\nint y;\n");
  auto r = rename_global_var(X, Y, p);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().message == rename_msg::kProgramDefinesNew);
  REQUIRE(r.error().location.has_value());
  CHECK(*r.error().location == Y);
}

TEST_CASE("covers matches the two examples") {
  Program first = parsed(fixture("shadow_capture.c"));
  CHECK(covers(Y, X, *fn_of(first, "f")));

  Program second = parsed(fixture("shadow_ok.c"));
  CHECK_FALSE(covers(Y, X, *fn_of(second, "f")));

  Program both = parsed("int f(int x, int y) {\n  return x;\n}\n");
  CHECK_FALSE(covers(Y, X, *fn_of(both, "f")));
}

TEST_CASE("no_cover_in_program") {
  CHECK_FALSE(no_cover_in_program(X, Y, parsed(fixture("shadow_capture.c"))));
  CHECK(no_cover_in_program(X, Y, parsed(fixture("shadow_ok.c"))));
  CHECK(no_cover_in_program(X, Y, parsed("")));
}

TEST_CASE("precondition clauses on the second listing: all pass") {
  Program p = parsed(fixture("shadow_ok.c"));
  PreconditionReport report = check_rename_precondition(X, Y, p);
  REQUIRE(report.clauses.size() == 11);
  for (const auto& clause : report.clauses) {
    CAPTURE(clause.name);
    CHECK(clause.holds);
  }
  CHECK(report.pass());
}

TEST_CASE("precondition clauses on the first listing: capture detected") {
  Program p = parsed(fixture("shadow_capture.c"));
  PreconditionReport report = check_rename_precondition(X, Y, p);
  CHECK_FALSE(report.pass());
  for (const auto& clause : report.clauses) {
    if (clause.name == "no_cover_in_prog" ||
        clause.name == "not_appears_free_x") {
      CHECK_FALSE(clause.holds);
    } else {
      CAPTURE(clause.name);
      CHECK(clause.holds);
    }
  }
}

TEST_CASE("precondition with identical names fails its first clause") {
  Program p = parsed(fixture("shadow_ok.c"));
  PreconditionReport report = check_rename_precondition(X, X, p);
  CHECK_FALSE(report.pass());
  CHECK(report.clauses[0].name == "x_ne_y");
  CHECK_FALSE(report.clauses[0].holds);
}

TEST_CASE("requests with equal names are refused at construction") {
  CHECK_FALSE(RenameRequest::make(X, X).has_value());
  auto req = RenameRequest::make(X, Y);
  REQUIRE(req.has_value());
  CHECK(req->old_name == X);
}

TEST_CASE("invertibility on the successful listing") {
  Program p = parsed(fixture("shadow_ok.c"));
  auto forward = rename_global_var(X, Y, p);
  REQUIRE(forward.ok());
  auto back = rename_global_var(Y, X, forward.value());
  REQUIRE(back.ok());
  CHECK(back.value() == p);
}
