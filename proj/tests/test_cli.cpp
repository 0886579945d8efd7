// End-to-end checks for the command-line surface: exit codes, exact
// diagnostics, and the output formats other tooling scrapes.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& args) {
  CommandResult result;
  std::string command = std::string(MINIC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe);
  char buf[512];
  while (fgets(buf, sizeof(buf), pipe)) result.output += buf;
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture(const std::string& name) {
  return std::string(MINIC_FIXTURE_DIR) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("rename writes the output file and exits 0") {
  std::string out = fixture("cli_rename_out.tmp");
  CommandResult r =
      run_command("rename " + fixture("shadow_ok.c") + " x y -o " + out);
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "int y;\nint f(int y) {\n  return y + 1;\n}\n");
  std::remove(out.c_str());
}

TEST_CASE("rename prints the refusal verbatim and exits 1") {
  CommandResult r =
      run_command("rename " + fixture("shadow_capture.c") + " x y");
  CHECK(r.exit_code == 1);
  CHECK(r.output ==
        "This renaming would introduce an undesired shadowing.\n");
}

TEST_CASE("identical names are rejected up front") {
  CommandResult r = run_command("rename " + fixture("shadow_ok.c") + " x x");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.output, "identical"));
}

TEST_CASE("check prints one line per clause and the verdict") {
  CommandResult ok = run_command("check " + fixture("shadow_ok.c") + " x y");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "x_ne_y"));
  CHECK(contains(ok.output, "no_cover_in_prog"));
  CHECK(contains(ok.output, "verdict: rename will succeed"));
  CHECK_FALSE(contains(ok.output, "FAIL"));

  CommandResult bad =
      run_command("check " + fixture("shadow_capture.c") + " x y");
  CHECK(bad.exit_code == 1);
  CHECK(contains(bad.output, "no_cover_in_prog                    FAIL"));

  CommandResult vol =
      run_command("check " + fixture("volatile_global.c") + " v w");
  CHECK(vol.exit_code == 1);
  CHECK(contains(vol.output,
                 "not_defines_volatile_globvar_x      FAIL"));
}

TEST_CASE("run lists behaviors canonically") {
  CommandResult r =
      run_command("run " + fixture("printf_pair.c") + " --mode exhaustive");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "behaviors: 2\n"
        "Terminates code=2\n"
        "  EXTCALL printf 65 1\n"
        "  EXTCALL printf 66 1\n"
        "Terminates code=2\n"
        "  EXTCALL printf 66 1\n"
        "  EXTCALL printf 65 1\n");
}

TEST_CASE("run reports a missing main") {
  CommandResult r = run_command("run " + fixture("shadow_ok.c"));
  CHECK(r.exit_code == 1);
  CHECK(contains(r.output, "no main function"));
}

TEST_CASE("parse errors exit 2 with a position") {
  std::string bad = fixture("cli_bad.tmp.c");
  {
    std::ofstream out(bad);
    out << "int f(void) {\n  1 = 2;\n}\n";
  }
  CommandResult r = run_command("rename " + bad + " x y");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, ":2:"));
  std::remove(bad.c_str());
}

TEST_CASE("proptest validates its iteration count") {
  CommandResult r = run_command("proptest --iters 0");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.output, "--iters must be >= 1"));
}

TEST_CASE("proptest honors config-file seeds") {
  std::string conf = fixture("cli_seed.tmp.conf");
  {
    std::ofstream out(conf);
    out << "seed = 5\n";
  }
  CommandResult a = run_command("proptest --iters 30 --config " + conf);
  CommandResult b = run_command("proptest --iters 30 --seed 5");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  std::remove(conf.c_str());
}
