#include <fstream>
#include <sstream>

#include "doctest.h"
#include "minic/config.hpp"
#include "minic/harness.hpp"
#include "minic/parser.hpp"

using namespace minic;

namespace {

Program parsed(const std::string& text) {
  auto r = parse_text(text);
  REQUIRE(r.ok());
  return r.take();
}

const Ident X = intern("x");
const Ident Y = intern("y");

}  // namespace

TEST_CASE("paper corpus verdicts hold for the real engine") {
  auto failures = run_corpus_checks(MINIC_FIXTURE_DIR, EngineMutation::None);
  for (const auto& f : failures) {
    CAPTURE(f);
    CHECK(false);
  }
  CHECK(failures.empty());
}

TEST_CASE("diff passes on a behavior-preserving rename") {
  Program p = parsed(
      "int x = 3;\nint f(int y) {\n  return y + 1;\n}\n"
      "int main(void) {\n  x = f(x);\n  return x + printf(x);\n}\n");
  HarnessConfig config;
  auto outcome = diff_behaviors(p, X, Y, config);
  REQUIRE(outcome.ok());
  CHECK(outcome.value().pass);

  config.mode = EvalMode::Exhaustive;
  auto exhaustive = diff_behaviors(p, X, Y, config);
  REQUIRE(exhaustive.ok());
  CHECK(exhaustive.value().pass);
}

TEST_CASE("diff propagates engine refusals verbatim") {
  Program p = parsed("int x;\nint f(int y) {\n  return y + x;\n}\n"
                     "int main(void) {\n  return 0;\n}\n");
  HarnessConfig config;
  auto outcome = diff_behaviors(p, X, Y, config);
  REQUIRE_FALSE(outcome.ok());
  CHECK(outcome.error() == rename_msg::kWouldShadow);
}

TEST_CASE("a library oracle reading a global produces a divergence") {
  std::ifstream in(std::string(MINIC_FIXTURE_DIR) + "/lib_global.c");
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  Program p = parsed(buf.str());

  HarnessConfig config;
  config.extcalls = ExtCallModel{};
  config.extcalls.add_pure(intern("printf"));
  config.extcalls.add_reads_global(intern("blackbox"), intern("a"));
  CHECK_FALSE(config.extcalls.compliant_for(intern("a"), intern("b")));

  auto outcome = diff_behaviors(p, intern("a"), intern("b"), config);
  REQUIRE(outcome.ok());
  CHECK_FALSE(outcome.value().pass);
  CHECK_FALSE(outcome.value().divergence.empty());
  REQUIRE(outcome.value().renamed.size() == 1);
  CHECK(outcome.value().renamed.begin()->kind == BehaviorKind::GoesWrong);
}

TEST_CASE("the property suite passes on the real engine") {
  PropTestOptions opts;
  opts.iterations = 60;
  opts.seed = 11;
  PropTestReport report = run_property_suite(opts);
  CAPTURE(report.to_string());
  CHECK(report.pass());
  CHECK(report.round_trips == 60);
  CHECK(report.renames_ok > 0);
  CHECK(report.renames_refused > 0);
}

TEST_CASE("the report is reproducible for a seed") {
  PropTestOptions opts;
  opts.iterations = 40;
  opts.seed = 321;
  CHECK(run_property_suite(opts).to_string() ==
        run_property_suite(opts).to_string());
}

TEST_CASE("every seeded mutant is detected") {
  PropTestOptions base;
  base.iterations = 500;
  base.seed = 42;
  auto outcomes = run_mutation_meta(MINIC_FIXTURE_DIR, base);
  REQUIRE(outcomes.size() == 4);
  for (const auto& o : outcomes) {
    CAPTURE(o.mutant);
    CAPTURE(o.how);
    CHECK(o.detected);
  }
}

TEST_CASE("config parsing") {
  HarnessConfig base;
  auto r = parse_config_text(
      "# comment\nmode = exhaustive\nstep_budget = 500\nseed = 9\n"
      "extcall = blackbox reads_global a\nextcall = printf pure\n",
      base);
  REQUIRE(r.ok());
  CHECK(r.value().mode == EvalMode::Exhaustive);
  CHECK(r.value().step_budget == 500);
  CHECK(r.value().seed == 9);
  CHECK(r.value().extcalls.find(intern("blackbox")) != nullptr);
  CHECK(r.value().extcalls.find(intern("printf")) != nullptr);

  CHECK_FALSE(parse_config_text("mode = sometimes\n", base).ok());
  CHECK_FALSE(parse_config_text("step_budget = 0\n", base).ok());
  CHECK_FALSE(parse_config_text("color = red\n", base).ok());
  CHECK_FALSE(parse_config_text("extcall = f sometimes\n", base).ok());
  CHECK_FALSE(parse_config_text("just words\n", base).ok());
}

TEST_CASE("the first extcall line replaces the default model") {
  HarnessConfig base;
  auto r = parse_config_text("extcall = ext pure\n", base);
  REQUIRE(r.ok());
  CHECK(r.value().extcalls.find(intern("ext")) != nullptr);
  CHECK(r.value().extcalls.find(intern("printf")) == nullptr);
}

TEST_CASE("behavior listing format") {
  BehaviorSet set{
      Behavior{BehaviorKind::Terminates, {GlobReadEvent{intern("g"), 1}}, 1}};
  CHECK(behavior_listing(set) ==
        "behaviors: 1\nTerminates code=1\n  GLOBREAD g 1\n");
}
