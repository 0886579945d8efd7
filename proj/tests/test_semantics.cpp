#include <fstream>
#include <sstream>

#include "doctest.h"
#include "minic/parser.hpp"
#include "minic/semantics.hpp"

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

BehaviorSet run_ok(const Program& p, EvalMode mode, int budget = 10000,
                   const ExtCallModel& model = ExtCallModel::default_model()) {
  auto r = run(p, model, mode, budget);
  REQUIRE(r.ok());
  return r.take();
}

const Ident X = intern("x");
const Ident Y = intern("y");

}  // namespace

TEST_CASE("reading a non-volatile global emits one read event") {
  Program p = parsed("int g = 7;\nint main(void) {\n  return g;\n}\n");
  auto model = ExtCallModel::default_model();
  auto init = initial_state(p);
  REQUIRE(init.ok());

  Interp interp(model, EvalMode::Deterministic);
  // return g  -->  focus the expression  -->  read the global
  auto s1 = interp.step(init.value());
  REQUIRE(s1.size() == 1);
  auto s2 = interp.step(s1[0].to);
  REQUIRE(s2.size() == 1);
  REQUIRE(s2[0].events.size() == 1);
  CHECK(s2[0].events[0] == Event{GlobReadEvent{intern("g"), 7}});
  const auto* expr_state = std::get_if<StRunExpr>(&s2[0].to.v);
  REQUIRE(expr_state);
  CHECK(equal(plug(expr_state->ctx, expr_state->focus), make_int(7)));

  BehaviorSet behaviors = run_ok(p, EvalMode::Deterministic);
  REQUIRE(behaviors.size() == 1);
  CHECK(*behaviors.begin() ==
        Behavior{BehaviorKind::Terminates, {GlobReadEvent{intern("g"), 7}}, 7});
}

TEST_CASE("undefined reads, calls and divisions go wrong") {
  for (const char* text : {
           "int main(void) {\n  return zz;\n}\n",
           "int main(void) {\n  return zz(1);\n}\n",
           "int main(void) {\n  return 1 / 0;\n}\n",
           "int main(void) {\n  int t;\n  return t;\n}\n",
           "int main(void) {\n  zz = 4;\n}\n",
           "int g;\nint main(void) {\n  return g(1);\n}\n",
       }) {
    CAPTURE(text);
    BehaviorSet behaviors = run_ok(parsed(text), EvalMode::Deterministic);
    REQUIRE(behaviors.size() == 1);
    CHECK(behaviors.begin()->kind == BehaviorKind::GoesWrong);
  }
}

TEST_CASE("exhaustive mode branches on every effectful redex") {
  Program pair = parsed(fixture("printf_pair.c"));
  auto model = ExtCallModel::default_model();
  auto init = initial_state(pair);
  REQUIRE(init.ok());
  Interp interp(model, EvalMode::Exhaustive);
  // return printf(65) + printf(66)  -->  focus the sum: two call positions
  auto s1 = interp.step(init.value());
  REQUIRE(s1.size() == 1);
  auto s2 = interp.step(s1[0].to);
  REQUIRE(s2.size() == 2);
  REQUIRE(s2[0].events.size() == 1);
  REQUIRE(s2[1].events.size() == 1);
  CHECK(s2[0].events[0] == Event{ExtCallEvent{intern("printf"), {65}, 1}});
  CHECK(s2[1].events[0] == Event{ExtCallEvent{intern("printf"), {66}, 1}});

  Interp det(model, EvalMode::Deterministic);
  auto d2 = det.step(s1[0].to);
  REQUIRE(d2.size() == 1);
  CHECK(d2[0].events[0] == Event{ExtCallEvent{intern("printf"), {65}, 1}});
}

TEST_CASE("unspecified evaluation order: two printfs interleave") {
  Program pair = parsed(fixture("printf_pair.c"));
  BehaviorSet exhaustive = run_ok(pair, EvalMode::Exhaustive);
  REQUIRE(exhaustive.size() == 2);
  Behavior ab{BehaviorKind::Terminates,
              {ExtCallEvent{intern("printf"), {65}, 1},
               ExtCallEvent{intern("printf"), {66}, 1}},
              2};
  Behavior ba{BehaviorKind::Terminates,
              {ExtCallEvent{intern("printf"), {66}, 1},
               ExtCallEvent{intern("printf"), {65}, 1}},
              2};
  CHECK(exhaustive.count(ab));
  CHECK(exhaustive.count(ba));

  Program split = parsed(fixture("printf_split.c"));
  BehaviorSet split_behaviors = run_ok(split, EvalMode::Exhaustive);
  REQUIRE(split_behaviors.size() == 1);
  CHECK(split_behaviors.count(ab));

  // The sequentialized program's behaviors are included in the original's.
  for (const Behavior& b : split_behaviors) CHECK(exhaustive.count(b));

  BehaviorSet deterministic = run_ok(pair, EvalMode::Deterministic);
  REQUIRE(deterministic.size() == 1);
  CHECK(deterministic.count(ab));
}

TEST_CASE("budget exhaustion yields Unknown") {
  Program p = parsed("int main(void) {\n  while (1) {\n  }\n}\n");
  BehaviorSet behaviors = run_ok(p, EvalMode::Deterministic, 1000);
  REQUIRE(behaviors.size() == 1);
  CHECK(*behaviors.begin() == Behavior{BehaviorKind::Unknown, {}, 0});
}

TEST_CASE("volatile accesses are always visible") {
  Program p = parsed(
      "volatile int v = 3;\nint main(void) {\n  v = v + 1;\n  return v;\n}\n");
  BehaviorSet behaviors = run_ok(p, EvalMode::Deterministic);
  REQUIRE(behaviors.size() == 1);
  Trace expected = {VolLoadEvent{intern("v"), 3}, VolStoreEvent{intern("v"), 4},
                    VolLoadEvent{intern("v"), 4}};
  CHECK(*behaviors.begin() ==
        Behavior{BehaviorKind::Terminates, expected, 4});
}

TEST_CASE("calls bind parameters and return values") {
  Program p = parsed(
      "int add(int u, int w) {\n  return u + w;\n}\n"
      "int main(void) {\n  return add(2, 3);\n}\n");
  BehaviorSet behaviors = run_ok(p, EvalMode::Deterministic);
  REQUIRE(behaviors.size() == 1);
  CHECK(*behaviors.begin() == Behavior{BehaviorKind::Terminates, {}, 5});

  Program wrong = parsed(
      "int add(int u, int w) {\n  return u + w;\n}\n"
      "int main(void) {\n  return add(2);\n}\n");
  CHECK(run_ok(wrong, EvalMode::Deterministic).begin()->kind ==
        BehaviorKind::GoesWrong);
}

TEST_CASE("falling off a function body returns zero") {
  Program p = parsed(
      "int g;\nvoid poke(void) {\n  g = 9;\n}\n"
      "int main(void) {\n  poke();\n  return g;\n}\n");
  BehaviorSet behaviors = run_ok(p, EvalMode::Deterministic);
  REQUIRE(behaviors.size() == 1);
  CHECK(behaviors.begin()->code == 9);
}

TEST_CASE("globals default to zero and initialize in definition order") {
  Program p = parsed("int g;\nint main(void) {\n  return g;\n}\n");
  CHECK(run_ok(p, EvalMode::Deterministic).begin()->code == 0);

  Program chain = parsed(
      "int a = 1;\nint b = a + 1;\nint main(void) {\n  return b;\n}\n");
  CHECK(run_ok(chain, EvalMode::Deterministic).begin()->code == 2);

  Program forward = parsed(
      "int b = a + 1;\nint a = 5;\nint main(void) {\n  return b;\n}\n");
  CHECK(run_ok(forward, EvalMode::Deterministic).begin()->code == 1);

  Program bad = parsed("int b = zz;\nint main(void) {\n  return 0;\n}\n");
  CHECK(run_ok(bad, EvalMode::Deterministic).begin()->kind ==
        BehaviorKind::GoesWrong);
}

TEST_CASE("missing main and bad budgets are errors") {
  auto model = ExtCallModel::default_model();
  auto r = run(parsed("int x;\n"), model, EvalMode::Deterministic, 100);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().message == "no main function");

  auto r2 = run(parsed("int main(void) {\n}\n"), model,
                EvalMode::Deterministic, 0);
  CHECK_FALSE(r2.ok());
}

TEST_CASE("rename_global_env moves the slot and checks collisions") {
  GlobalEnv ge;
  ge.main = intern("main");
  ge.vars[X] = GlobalSlot{5, false};
  auto r = rename_global_env(X, Y, ge);
  REQUIRE(r.ok());
  CHECK(r.value().vars.count(Y));
  CHECK(r.value().vars.at(Y).value == 5);
  CHECK_FALSE(r.value().vars.count(X));

  GlobalEnv collision = ge;
  collision.vars[Y] = GlobalSlot{6, false};
  CHECK_FALSE(rename_global_env(X, Y, collision).ok());

  GlobalEnv missing;
  missing.main = intern("main");
  CHECK_FALSE(rename_global_env(X, Y, missing).ok());
}

TEST_CASE("renaming the initial state matches the initial renamed state") {
  auto model = ExtCallModel::default_model();
  const char* programs[] = {
      // plain force-body situation plus a call
      "int x = 2;\nint f(int y) {\n  return y + 1;\n}\n"
      "int main(void) {\n  x = x + 1;\n  return f(x);\n}\n",
      // main binds both names: state segment untouched
      "int x = 2;\nint main(void) {\n  int y;\n  int t;\n  y = 0;\n  t = y;\n"
      "  return t;\n}\n",
      // continuation is just the stop frame
      "int x;\nint main(void) {\n  return 1;\n}\n",
  };
  for (const char* text : programs) {
    CAPTURE(text);
    Program p = parsed(text);
    auto renamed_program = rename_global_var(X, Y, p);
    REQUIRE(renamed_program.ok());

    auto init = initial_state(p);
    REQUIRE(init.ok());
    auto renamed_state = rename_state(X, Y, init.value());
    REQUIRE(renamed_state.ok());

    auto init_renamed = initial_state(renamed_program.value());
    REQUIRE(init_renamed.ok());
    CHECK(renamed_state.value() == init_renamed.value());
  }
}

TEST_CASE("lockstep commutation on programs with calls and shadowing") {
  auto model = ExtCallModel::default_model();
  const char* programs[] = {
      "int x = 3;\nint g(int y) {\n  return y + 1;\n}\n"
      "int main(void) {\n  int t;\n  t = g(x);\n  return t + x;\n}\n",
      "int x = 1;\nint f(int y) {\n  return y + 1;\n}\n"
      "int main(void) {\n  int i;\n  i = 0;\n  while (i < 3) {\n"
      "    x = x + f(i);\n    i = i + 1;\n  }\n  return x;\n}\n",
      "int x;\nint main(void) {\n  return printf(1) + printf(x);\n}\n",
  };
  for (const char* text : programs) {
    CAPTURE(text);
    auto r = check_lockstep(X, Y, parsed(text), model, 2000);
    REQUIRE(r.ok());
    CHECK(r.value().pass);
    CHECK(r.value().transitions_checked > 10);
  }
}

TEST_CASE("an oracle reading a global breaks commutation") {
  ExtCallModel model;
  model.add_reads_global(intern("blackbox"), intern("a"));
  Program p = parsed(fixture("lib_global.c"));
  auto r = check_lockstep(intern("a"), intern("b"), p, model, 2000);
  REQUIRE(r.ok());
  CHECK_FALSE(r.value().pass);
  CHECK_FALSE(r.value().counterexample.empty());
}

TEST_CASE("deterministic behaviors refine exhaustive ones") {
  for (const char* name : {"printf_pair.c", "printf_split.c", "lib_global.c"}) {
    CAPTURE(name);
    ExtCallModel model = ExtCallModel::default_model();
    model.add_reads_global(intern("blackbox"), intern("a"));
    Program p = parsed(fixture(name));
    BehaviorSet det = run_ok(p, EvalMode::Deterministic, 10000, model);
    BehaviorSet exh = run_ok(p, EvalMode::Exhaustive, 10000, model);
    for (const Behavior& b : det) CHECK(exh.count(b));
  }
}

TEST_CASE("external-call compliance") {
  ExtCallModel pure = ExtCallModel::default_model();
  CHECK(pure.compliant_for(X, Y));
  CHECK_FALSE(pure.compliant_for(intern("printf"), Y));

  ExtCallModel impure;
  impure.add_reads_global(intern("blackbox"), intern("a"));
  CHECK_FALSE(impure.compliant_for(X, Y));
}
