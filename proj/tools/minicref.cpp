#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "minic/config.hpp"
#include "minic/harness.hpp"
#include "minic/keywords.hpp"
#include "minic/parser.hpp"
#include "minic/printer.hpp"
#include "minic/rename.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefused = 1;
constexpr int kExitParseError = 2;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

int parse_or_fail(const std::string& path, minic::Program& out) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << path << ": cannot read file\n";
    return kExitParseError;
  }
  auto parsed = minic::parse(minic::SourceFile{path, text});
  if (!parsed.ok()) {
    const auto& e = parsed.error();
    std::cerr << path << ':' << e.line << ':' << e.column << ": " << e.message
              << '\n';
    return kExitParseError;
  }
  out = parsed.take();
  return kExitOk;
}

// Validates the rename pair the way the tool does before interning: the new
// name must not be a keyword, both must be lexically identifiers.
int validate_pair(const std::string& old_text, const std::string& new_text,
                  minic::Ident& old_name, minic::Ident& new_name) {
  if (minic::is_c_keyword(new_text)) {
    std::cerr << minic::rename_msg::kKeyword << '\n';
    return kExitRefused;
  }
  if (!minic::is_identifier_text(old_text)) {
    std::cerr << "invalid identifier '" << old_text << "'\n";
    return kExitRefused;
  }
  if (!minic::is_identifier_text(new_text)) {
    std::cerr << "invalid identifier '" << new_text << "'\n";
    return kExitRefused;
  }
  if (old_text == new_text) {
    std::cerr << "old and new names are identical\n";
    return kExitRefused;
  }
  old_name = minic::intern(old_text);
  new_name = minic::intern(new_text);
  return kExitOk;
}

struct ConfigArgs {
  std::string config_path;
  std::string mode;
  int budget = 0;
  std::vector<std::string> extcalls;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "harness config file");
    cmd->add_option("--mode", mode, "deterministic or exhaustive");
    cmd->add_option("--budget", budget, "step budget (>= 1)");
    cmd->add_option("--extcall", extcalls,
                    "'NAME pure' or 'NAME reads_global IDENT' (repeatable)");
  }

  // CLI flags win over config file entries.
  int resolve(minic::HarnessConfig& config) const {
    if (!config_path.empty()) {
      auto loaded = minic::load_config_file(config_path, config);
      if (!loaded.ok()) {
        std::cerr << loaded.error() << '\n';
        return kExitRefused;
      }
      config = loaded.take();
    }
    if (!mode.empty()) {
      if (mode == "deterministic") {
        config.mode = minic::EvalMode::Deterministic;
      } else if (mode == "exhaustive") {
        config.mode = minic::EvalMode::Exhaustive;
      } else {
        std::cerr << "--mode must be deterministic or exhaustive\n";
        return kExitRefused;
      }
    }
    if (budget != 0) {
      if (budget < 1) {
        std::cerr << "--budget must be >= 1\n";
        return kExitRefused;
      }
      config.step_budget = budget;
    }
    if (!extcalls.empty()) {
      config.extcalls = minic::ExtCallModel{};
      for (const std::string& spec : extcalls) {
        auto r = minic::apply_extcall_spec(config.extcalls, spec);
        if (!r.ok()) {
          std::cerr << r.error() << '\n';
          return kExitRefused;
        }
      }
    }
    return kExitOk;
  }
};

int cmd_rename(const std::string& file, const std::string& old_text,
               const std::string& new_text, const std::string& out_path) {
  minic::Ident old_name, new_name;
  if (int rc = validate_pair(old_text, new_text, old_name, new_name)) return rc;
  minic::Program program;
  if (int rc = parse_or_fail(file, program)) return rc;

  auto renamed = minic::rename_global_var(old_name, new_name, program);
  if (!renamed.ok()) {
    std::cerr << renamed.error().message << '\n';
    return kExitRefused;
  }
  std::string text = minic::pretty_print(renamed.value());
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << out_path << ": cannot write file\n";
      return kExitRefused;
    }
    out << text;
  }
  return kExitOk;
}

int cmd_check(const std::string& file, const std::string& old_text,
              const std::string& new_text) {
  minic::Ident old_name, new_name;
  if (!minic::is_identifier_text(old_text) ||
      !minic::is_identifier_text(new_text)) {
    std::cerr << "invalid identifier\n";
    return kExitRefused;
  }
  old_name = minic::intern(old_text);
  new_name = minic::intern(new_text);
  minic::Program program;
  if (int rc = parse_or_fail(file, program)) return rc;

  auto report = minic::check_rename_precondition(old_name, new_name, program);
  for (const auto& clause : report.clauses) {
    std::cout << clause.name;
    for (size_t i = clause.name.size(); i < 36; ++i) std::cout << ' ';
    std::cout << (clause.holds ? "PASS" : "FAIL") << '\n';
  }
  if (report.pass()) {
    std::cout << "verdict: rename will succeed\n";
    return kExitOk;
  }
  int failed = 0;
  for (const auto& clause : report.clauses) {
    if (!clause.holds) ++failed;
  }
  std::cout << "verdict: precondition not met (" << failed
            << " clause(s) failed); the rename may still succeed or will "
               "be refused with a specific diagnostic\n";
  return kExitRefused;
}

int cmd_run(const std::string& file, const ConfigArgs& args) {
  minic::HarnessConfig config;
  if (int rc = args.resolve(config)) return rc;
  minic::Program program;
  if (int rc = parse_or_fail(file, program)) return rc;

  auto behaviors =
      minic::run(program, config.extcalls, config.mode, config.step_budget);
  if (!behaviors.ok()) {
    std::cerr << behaviors.error().message << '\n';
    return kExitRefused;
  }
  std::cout << minic::behavior_listing(behaviors.value());
  return kExitOk;
}

int cmd_diff(const std::string& file, const std::string& old_text,
             const std::string& new_text, bool unsafe,
             const ConfigArgs& args) {
  minic::Ident old_name, new_name;
  if (int rc = validate_pair(old_text, new_text, old_name, new_name)) return rc;
  minic::HarnessConfig config;
  if (int rc = args.resolve(config)) return rc;
  minic::Program program;
  if (int rc = parse_or_fail(file, program)) return rc;

  if (!unsafe && !config.extcalls.compliant_for(old_name, new_name)) {
    std::cerr << "external-call model is not compliant for this renaming "
                 "(an oracle reads a global or collides with the names); "
                 "use --unsafe to run the comparison anyway\n";
    return kExitRefused;
  }

  auto outcome =
      minic::diff_behaviors(program, old_name, new_name, config);
  if (!outcome.ok()) {
    std::cerr << outcome.error() << '\n';
    return kExitRefused;
  }
  if (outcome.value().pass) {
    std::cout << "PASS: behaviors equal up to renaming ("
              << outcome.value().original.size() << " behavior(s))\n";
    return kExitOk;
  }
  std::cout << "DIVERGENCE\n" << outcome.value().divergence;
  std::cout << "original behaviors:\n"
            << minic::behavior_listing(outcome.value().original);
  std::cout << "renamed behaviors:\n"
            << minic::behavior_listing(outcome.value().renamed);
  return kExitRefused;
}

int cmd_proptest(int iterations, uint64_t seed, bool seed_set,
                 const ConfigArgs& args) {
  if (iterations < 1) {
    std::cerr << "--iters must be >= 1\n";
    return kExitRefused;
  }
  minic::HarnessConfig config;
  if (int rc = args.resolve(config)) return rc;

  minic::PropTestOptions opts;
  opts.iterations = iterations;
  opts.seed = seed_set ? seed : config.seed;
  opts.step_budget = config.step_budget;
  minic::PropTestReport report = minic::run_property_suite(opts);
  std::cout << report.to_string();
  return report.pass() ? kExitOk : kExitRefused;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rename global variables in a mini-C subset and check behavior "
      "preservation"};
  app.require_subcommand(1);

  std::string file, old_text, new_text, out_path;

  auto* rename_cmd =
      app.add_subcommand("rename", "rename a global variable in a file");
  rename_cmd->add_option("file", file, "source file")->required();
  rename_cmd->add_option("old", old_text, "current name")->required();
  rename_cmd->add_option("new", new_text, "new name")->required();
  rename_cmd->add_option("-o,--output", out_path,
                         "write result here instead of stdout");

  auto* check_cmd = app.add_subcommand(
      "check", "evaluate the sufficient precondition clause by clause");
  check_cmd->add_option("file", file, "source file")->required();
  check_cmd->add_option("old", old_text, "current name")->required();
  check_cmd->add_option("new", new_text, "new name")->required();

  auto* run_cmd =
      app.add_subcommand("run", "list the possible behaviors of a program");
  run_cmd->add_option("file", file, "source file")->required();
  ConfigArgs run_args;
  run_args.attach(run_cmd);

  auto* diff_cmd = app.add_subcommand(
      "diff", "rename, run both versions and compare behaviors");
  diff_cmd->add_option("file", file, "source file")->required();
  diff_cmd->add_option("old", old_text, "current name")->required();
  diff_cmd->add_option("new", new_text, "new name")->required();
  bool unsafe = false;
  diff_cmd->add_flag("--unsafe", unsafe,
                     "skip the external-call compliance check");
  ConfigArgs diff_args;
  diff_args.attach(diff_cmd);

  auto* prop_cmd = app.add_subcommand(
      "proptest", "run the randomized property suite");
  int iterations = 500;
  uint64_t seed = 1;
  prop_cmd->add_option("--iters", iterations, "number of generated programs");
  auto* seed_opt = prop_cmd->add_option("--seed", seed, "generator seed");
  ConfigArgs prop_args;
  prop_args.attach(prop_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitRefused;
  }

  try {
    if (rename_cmd->parsed())
      return cmd_rename(file, old_text, new_text, out_path);
    if (check_cmd->parsed()) return cmd_check(file, old_text, new_text);
    if (run_cmd->parsed()) return cmd_run(file, run_args);
    if (diff_cmd->parsed())
      return cmd_diff(file, old_text, new_text, unsafe, diff_args);
    if (prop_cmd->parsed())
      return cmd_proptest(iterations, seed, seed_opt->count() > 0, prop_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRefused;
  }
  return kExitRefused;
}
