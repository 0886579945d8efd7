#pragma once

#include <map>
#include <string>
#include <vector>

#include "minic/config.hpp"
#include "minic/generator.hpp"
#include "minic/rename.hpp"
#include "minic/semantics.hpp"
#include "minic/trace.hpp"

namespace minic {

/// Result of the differential check: run the program and its renamed
/// version, then require the behavior sets to be equal up to renaming in
/// both directions.
struct DiffOutcome {
  bool pass = true;
  std::string divergence;  // minimal divergent pair when !pass
  BehaviorSet original;
  BehaviorSet renamed;
};

/// Errors carry the engine's refusal message or an evaluation problem.
Result<DiffOutcome, std::string> diff_behaviors(
    const Program& p, Ident old_name, Ident new_name,
    const HarnessConfig& config,
    EngineMutation mutation = EngineMutation::None);

/// Canonically ordered listing used by the run subcommand.
std::string behavior_listing(const BehaviorSet& behaviors);

struct PropTestOptions {
  int iterations = 500;
  uint64_t seed = 1;
  int step_budget = 10000;
  int lockstep_budget = 2000;
  bool check_behaviors = true;
  bool check_lockstep = true;
  EngineMutation mutation = EngineMutation::None;
  GenLimits limits{};
  int max_counterexamples = 5;
};

struct PropTestReport {
  int iterations = 0;
  uint64_t seed = 0;
  int round_trips = 0;
  int renames_ok = 0;
  int renames_refused = 0;
  std::map<std::string, int> refusals;
  int precondition_pass = 0;
  int precondition_fail = 0;
  int invertibility_ok = 0;
  int hygiene_ok = 0;
  int structure_ok = 0;
  int behavior_equiv_det = 0;
  int behavior_equiv_exh = 0;
  int refinement_ok = 0;
  int lockstep_ok = 0;
  int precondition_violations = 0;  // PASS verdicts the engine then refused
  int exceptions = 0;
  std::vector<std::string> counterexamples;
  int counterexamples_total = 0;

  bool pass() const { return counterexamples_total == 0; }
  /// Byte-identical for identical options.
  std::string to_string() const;
};

/// Runs the whole property suite over generated programs: pretty-print
/// round-trip, invertibility, name hygiene, structural preservation,
/// precondition sufficiency, behavior preservation up to renaming in both
/// evaluation modes, determinism refinement, and transition-level lockstep.
PropTestReport run_property_suite(const PropTestOptions& opts);

/// One checked-in example program with its expected engine verdict.
struct CorpusCase {
  std::string file;
  std::string old_name;
  std::string new_name;
  std::string expected_error;  // empty: rename must succeed
};

const std::vector<CorpusCase>& paper_corpus();

/// Replays every corpus case; returns a line per mismatch (empty = all good).
std::vector<std::string> run_corpus_checks(const std::string& fixture_dir,
                                           EngineMutation mutation);

struct MutationOutcome {
  std::string mutant;
  bool detected = false;
  std::string how;
};

/// Enables each seeded engine mutant in turn and checks that the corpus
/// verdicts or the property suite flag it.
std::vector<MutationOutcome> run_mutation_meta(const std::string& fixture_dir,
                                               PropTestOptions base);

}  // namespace minic
