#include "minic/harness.hpp"

#include <fstream>
#include <sstream>

#include "minic/parser.hpp"
#include "minic/printer.hpp"

namespace minic {

namespace {

std::string indent_trace(const Trace& t) {
  std::string out;
  for (const Event& ev : t) {
    out += "  ";
    out += serialize_event(ev);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string behavior_listing(const BehaviorSet& behaviors) {
  std::string out = "behaviors: " + std::to_string(behaviors.size()) + "\n";
  for (const Behavior& b : behaviors) {
    out += describe_behavior(b);
    out += '\n';
    out += indent_trace(b.trace);
  }
  return out;
}

Result<DiffOutcome, std::string> diff_behaviors(const Program& p,
                                                Ident old_name, Ident new_name,
                                                const HarnessConfig& config,
                                                EngineMutation mutation) {
  auto renamed = rename_global_var(old_name, new_name, p, mutation);
  if (!renamed.ok()) return renamed.error().message;

  auto original_run =
      run(p, config.extcalls, config.mode, config.step_budget);
  if (!original_run.ok()) return original_run.error().message;
  auto renamed_run =
      run(renamed.value(), config.extcalls, config.mode, config.step_budget);
  if (!renamed_run.ok()) return renamed_run.error().message;

  DiffOutcome outcome;
  outcome.original = original_run.take();
  outcome.renamed = renamed_run.take();

  auto equal = behaviors_equal_up_to_renaming(old_name, new_name,
                                              outcome.original,
                                              outcome.renamed);
  if (!equal.ok()) {
    outcome.pass = false;
    outcome.divergence =
        "renaming an observed behavior fails: " + equal.error().message;
    return outcome;
  }
  if (equal.value()) return outcome;

  outcome.pass = false;
  // Find a minimal divergent pair for the report.
  BehaviorSet forward;
  for (const Behavior& b : outcome.original) {
    auto rb = rename_behavior(old_name, new_name, b);
    if (rb.ok()) forward.insert(rb.take());
  }
  std::ostringstream msg;
  for (const Behavior& b : forward) {
    if (!outcome.renamed.count(b)) {
      msg << "original behavior (renamed) not matched by the renamed "
             "program:\n  "
          << describe_behavior(b) << '\n'
          << indent_trace(b.trace);
      break;
    }
  }
  for (const Behavior& b : outcome.renamed) {
    if (!forward.count(b)) {
      msg << "renamed program behavior with no counterpart in the "
             "original:\n  "
          << describe_behavior(b) << '\n'
          << indent_trace(b.trace);
      break;
    }
  }
  outcome.divergence = msg.str();
  return outcome;
}

namespace {

// Every Var leaf equal to the old name in the output must sit inside a
// function that binds it; the definition list must not name it at all.
bool name_hygiene_holds(const Program& renamed, Ident old_name) {
  for (const auto& [name, def] : renamed.defs) {
    if (name == old_name) return false;
    if (const auto* gv = std::get_if<GlobVar>(&def)) {
      if (appears_in_init(old_name, gv->init)) return false;
    } else {
      const FunctionPtr& fn = std::get<FunctionPtr>(def);
      if (!binds(old_name, *fn) && appears_statement(old_name, *fn->body))
        return false;
    }
  }
  return true;
}

// Definition order, count, kinds, types, volatility and main must survive a
// successful rename; only the renamed definition's name changes.
bool structure_preserved(const Program& before, const Program& after,
                         Ident old_name, Ident new_name) {
  if (before.defs.size() != after.defs.size()) return false;
  if (before.main != after.main) return false;
  if (var_leaf_count(before) != var_leaf_count(after)) return false;
  for (size_t i = 0; i < before.defs.size(); ++i) {
    Ident expected = before.defs[i].first == old_name ? new_name
                                                      : before.defs[i].first;
    if (after.defs[i].first != expected) return false;
    const GlobDef& a = before.defs[i].second;
    const GlobDef& b = after.defs[i].second;
    if (a.index() != b.index()) return false;
    if (const auto* gva = std::get_if<GlobVar>(&a)) {
      const auto& gvb = std::get<GlobVar>(b);
      if (gva->type != gvb.type || gva->is_volatile != gvb.is_volatile ||
          gva->init.size() != gvb.init.size())
        return false;
    } else {
      const auto& fa = std::get<FunctionPtr>(a);
      const auto& fb = std::get<FunctionPtr>(b);
      if (fa->ret != fb->ret || fa->params != fb->params ||
          fa->locals != fb->locals)
        return false;
    }
  }
  return true;
}

}  // namespace

PropTestReport run_property_suite(const PropTestOptions& opts) {
  PropTestReport report;
  report.iterations = opts.iterations;
  report.seed = opts.seed;

  ProgramGenerator gen(opts.seed, opts.limits);
  ExtCallModel model = ExtCallModel::default_model();

  auto note = [&](int iteration, const std::string& what) {
    ++report.counterexamples_total;
    if (static_cast<int>(report.counterexamples.size()) <
        opts.max_counterexamples) {
      report.counterexamples.push_back("iteration " +
                                       std::to_string(iteration) + ": " + what);
    }
  };

  for (int i = 1; i <= opts.iterations; ++i) {
    GenCase test = gen.next();
    const Program& p = test.program;
    Ident x = test.old_name;
    Ident y = test.new_name;

    try {
      // 1. Pretty-print / parse round-trip.
      auto reparsed = parse_text(pretty_print(p));
      if (!reparsed.ok()) {
        note(i, "generated program does not parse back: " +
                    reparsed.error().message);
        continue;
      }
      if (!(reparsed.value() == p)) {
        note(i, "pretty-print round-trip changed the tree");
        continue;
      }
      ++report.round_trips;

      // 2. The rename itself.
      auto renamed = rename_global_var(x, y, p, opts.mutation);
      PreconditionReport pre = check_rename_precondition(x, y, p);
      if (pre.pass()) {
        ++report.precondition_pass;
        if (!renamed.ok()) {
          ++report.precondition_violations;
          note(i, "precondition PASS but rename refused: " +
                      renamed.error().message);
        }
      } else {
        ++report.precondition_fail;
      }

      if (!renamed.ok()) {
        ++report.renames_refused;
        ++report.refusals[renamed.error().message];
        continue;
      }
      ++report.renames_ok;
      const Program& r = renamed.value();

      // 3. Invertibility.
      auto back = rename_global_var(y, x, r, opts.mutation);
      if (back.ok() && back.value() == p) {
        ++report.invertibility_ok;
      } else {
        note(i, back.ok() ? "reverse rename produced a different tree"
                          : "reverse rename refused: " + back.error().message);
      }

      // 4. Name hygiene and structure preservation.
      if (name_hygiene_holds(r, x)) {
        ++report.hygiene_ok;
      } else {
        note(i, "old name survives outside of shadowing binders");
      }
      if (structure_preserved(p, r, x, y)) {
        ++report.structure_ok;
      } else {
        note(i, "definition structure changed");
      }

      // 5. Behavior preservation up to renaming, both modes, plus the
      // deterministic-within-exhaustive refinement.
      if (opts.check_behaviors) {
        auto b_det = run(p, model, EvalMode::Deterministic, opts.step_budget);
        auto r_det = run(r, model, EvalMode::Deterministic, opts.step_budget);
        auto b_exh = run(p, model, EvalMode::Exhaustive, opts.step_budget);
        auto r_exh = run(r, model, EvalMode::Exhaustive, opts.step_budget);
        if (!b_det.ok() || !r_det.ok() || !b_exh.ok() || !r_exh.ok()) {
          note(i, "evaluation failed unexpectedly");
          continue;
        }
        auto eq_det =
            behaviors_equal_up_to_renaming(x, y, b_det.value(), r_det.value());
        if (eq_det.ok() && eq_det.value()) {
          ++report.behavior_equiv_det;
        } else {
          note(i, eq_det.ok()
                      ? "deterministic behaviors differ up to renaming"
                      : "deterministic behavior renaming failed: " +
                            eq_det.error().message);
        }
        auto eq_exh =
            behaviors_equal_up_to_renaming(x, y, b_exh.value(), r_exh.value());
        if (eq_exh.ok() && eq_exh.value()) {
          ++report.behavior_equiv_exh;
        } else {
          note(i, eq_exh.ok()
                      ? "exhaustive behaviors differ up to renaming"
                      : "exhaustive behavior renaming failed: " +
                            eq_exh.error().message);
        }
        bool refinement = true;
        for (const Behavior& b : b_det.value()) {
          if (!b_exh.value().count(b)) refinement = false;
        }
        if (refinement) {
          ++report.refinement_ok;
        } else {
          note(i, "deterministic behavior missing from exhaustive set");
        }
      }

      // 6. Transition-level commutation.
      if (opts.check_lockstep) {
        auto lockstep = check_lockstep(x, y, p, model, opts.lockstep_budget);
        if (!lockstep.ok()) {
          note(i, "lockstep rename disagrees with the engine: " +
                      lockstep.error().message);
        } else if (lockstep.value().pass) {
          ++report.lockstep_ok;
        } else {
          note(i, "lockstep counterexample: " +
                      lockstep.value().counterexample);
        }
      }
    } catch (const std::exception& e) {
      ++report.exceptions;
      note(i, std::string("unexpected exception: ") + e.what());
    }
  }
  return report;
}

std::string PropTestReport::to_string() const {
  std::ostringstream out;
  out << "proptest report\n";
  out << "seed: " << seed << "\n";
  out << "iterations: " << iterations << "\n";
  out << "round_trip: " << round_trips << "/" << iterations << "\n";
  out << "renames_ok: " << renames_ok << "\n";
  out << "renames_refused: " << renames_refused << "\n";
  static const char* kCatalog[] = {
      rename_msg::kKeyword,           rename_msg::kOldIsMain,
      rename_msg::kNewIsMain,         rename_msg::kOldNotGlobal,
      rename_msg::kOldIsFunction,     rename_msg::kOldInOwnInit,
      rename_msg::kNewAlreadyOccurs,  rename_msg::kVolatile,
      rename_msg::kProgramDefinesNew, rename_msg::kNewOccursInFunction,
      rename_msg::kWouldShadow};
  for (const char* msg : kCatalog) {
    auto it = refusals.find(msg);
    if (it != refusals.end()) {
      out << "  refused \"" << msg << "\": " << it->second << "\n";
    }
  }
  out << "precondition_pass: " << precondition_pass
      << " (rename succeeded for every PASS)\n";
  out << "precondition_fail: " << precondition_fail << "\n";
  out << "invertibility: " << invertibility_ok << "/" << renames_ok << "\n";
  out << "name_hygiene: " << hygiene_ok << "/" << renames_ok << "\n";
  out << "structure_preserved: " << structure_ok << "/" << renames_ok << "\n";
  out << "behavior_equiv_deterministic: " << behavior_equiv_det << "/"
      << renames_ok << "\n";
  out << "behavior_equiv_exhaustive: " << behavior_equiv_exh << "/"
      << renames_ok << "\n";
  out << "determinism_refinement: " << refinement_ok << "/" << renames_ok
      << "\n";
  out << "lockstep: " << lockstep_ok << "/" << renames_ok << "\n";
  out << "counterexamples: " << counterexamples_total << "\n";
  for (const std::string& c : counterexamples) {
    out << "  " << c << "\n";
  }
  return out.str();
}

const std::vector<CorpusCase>& paper_corpus() {
  static const std::vector<CorpusCase> corpus = {
      {"shadow_capture.c", "x", "y", rename_msg::kWouldShadow},
      {"shadow_ok.c", "x", "y", ""},
      {"free_occurrence.c", "x", "y", rename_msg::kNewOccursInFunction},
      {"hoisted_blocks.c", "x", "y", rename_msg::kWouldShadow},
      {"volatile_global.c", "v", "w", rename_msg::kVolatile},
      {"lib_global.c", "a", "b", ""},
      {"printf_pair.c", "x", "y", rename_msg::kOldNotGlobal},
      {"printf_split.c", "x", "y", rename_msg::kOldNotGlobal},
  };
  return corpus;
}

std::vector<std::string> run_corpus_checks(const std::string& fixture_dir,
                                           EngineMutation mutation) {
  std::vector<std::string> failures;
  for (const CorpusCase& c : paper_corpus()) {
    std::ifstream in(fixture_dir + "/" + c.file);
    if (!in) {
      failures.push_back(c.file + ": fixture missing");
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto parsed = parse_text(buf.str());
    if (!parsed.ok()) {
      failures.push_back(c.file + ": parse error: " + parsed.error().message);
      continue;
    }
    auto result = rename_global_var(intern(c.old_name), intern(c.new_name),
                                    parsed.value(), mutation);
    if (c.expected_error.empty()) {
      if (!result.ok()) {
        failures.push_back(c.file + ": expected success, got \"" +
                           result.error().message + "\"");
      }
    } else if (result.ok()) {
      failures.push_back(c.file + ": expected \"" + c.expected_error +
                         "\", rename succeeded");
    } else if (result.error().message != c.expected_error) {
      failures.push_back(c.file + ": expected \"" + c.expected_error +
                         "\", got \"" + result.error().message + "\"");
    }
  }
  return failures;
}

std::vector<MutationOutcome> run_mutation_meta(const std::string& fixture_dir,
                                               PropTestOptions base) {
  struct Mutant {
    EngineMutation mutation;
    const char* name;
  };
  static const Mutant mutants[] = {
      {EngineMutation::DropShadowedBodyCheck, "drop_shadowed_body_check"},
      {EngineMutation::DropCaptureCheck, "drop_capture_check"},
      {EngineMutation::SkipVolatileCheck, "skip_volatile_check"},
      {EngineMutation::SkipInitCollisionCheck, "skip_init_collision_check"},
  };

  std::vector<MutationOutcome> outcomes;
  for (const Mutant& m : mutants) {
    MutationOutcome outcome;
    outcome.mutant = m.name;

    auto corpus_failures = run_corpus_checks(fixture_dir, m.mutation);
    if (!corpus_failures.empty()) {
      outcome.detected = true;
      outcome.how = "corpus: " + corpus_failures.front();
    }

    PropTestOptions opts = base;
    opts.mutation = m.mutation;
    PropTestReport report = run_property_suite(opts);
    if (!report.pass()) {
      outcome.detected = true;
      if (!outcome.how.empty()) outcome.how += "; ";
      outcome.how += "properties: " + (report.counterexamples.empty()
                                           ? std::string("counterexample")
                                           : report.counterexamples.front());
    }

    if (!outcome.detected) outcome.how = "not detected";
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

}  // namespace minic
