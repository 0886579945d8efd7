#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "minic/ast.hpp"

namespace minic {

struct GenLimits {
  int max_globals = 3;
  int max_funcs = 3;  // besides main
  int max_stmts = 4;  // per function on top of scaffolding
};

/// One generated test case: a program plus the rename pair to try on it.
struct GenCase {
  Program program;
  Ident old_name;
  Ident new_name;
};

/// Draws random programs from a bounded grammar. Shadowing is injected
/// deliberately: functions rotate through the four binder recipes (bind
/// neither name, bind the old one, bind the new one, bind both) so every
/// branch of the per-function analysis is exercised in every run. The same
/// seed always yields the same case sequence.
class ProgramGenerator {
 public:
  explicit ProgramGenerator(uint64_t seed, GenLimits limits = {});

  GenCase next();

 private:
  uint64_t pick(uint64_t n) { return rng_() % n; }
  bool chance(int percent) { return pick(100) < static_cast<uint64_t>(percent); }

  std::mt19937_64 rng_;
  GenLimits limits_;
  uint64_t counter_ = 0;  // drives the binder-recipe rotation
};

}  // namespace minic
