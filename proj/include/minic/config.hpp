#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "minic/result.hpp"
#include "minic/semantics.hpp"

namespace minic {

/// Harness settings. The config file is plain key-value text:
///
///   # comment
///   mode = deterministic | exhaustive
///   step_budget = <integer >= 1>
///   seed = <integer>
///   extcall = <name> pure
///   extcall = <name> reads_global <ident>
///
/// The first `extcall` line replaces the default model (printf, pure);
/// later lines add to it.
struct HarnessConfig {
  EvalMode mode = EvalMode::Deterministic;
  int step_budget = 10000;
  uint64_t seed = 1;
  ExtCallModel extcalls = ExtCallModel::default_model();
};

/// Parses one `extcall` value ("NAME pure" or "NAME reads_global IDENT").
Result<bool, std::string> apply_extcall_spec(ExtCallModel& model,
                                             std::string_view spec);

/// Applies config text on top of `base`.
Result<HarnessConfig, std::string> parse_config_text(std::string_view text,
                                                     HarnessConfig base);

Result<HarnessConfig, std::string> load_config_file(const std::string& path,
                                                    HarnessConfig base);

}  // namespace minic
