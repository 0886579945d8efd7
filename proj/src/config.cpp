#include "minic/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace minic {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> words;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) words.push_back(s.substr(start, i - start));
  }
  return words;
}

}  // namespace

Result<bool, std::string> apply_extcall_spec(ExtCallModel& model,
                                             std::string_view spec) {
  auto words = split_words(trim(spec));
  if (words.size() == 2 && words[1] == "pure") {
    if (!is_identifier_text(words[0])) {
      return std::string("extcall: invalid function name '") +
             std::string(words[0]) + "'";
    }
    model.add_pure(intern(words[0]));
    return true;
  }
  if (words.size() == 3 && words[1] == "reads_global") {
    if (!is_identifier_text(words[0]) || !is_identifier_text(words[2])) {
      return std::string("extcall: invalid identifier in '") +
             std::string(spec) + "'";
    }
    model.add_reads_global(intern(words[0]), intern(words[2]));
    return true;
  }
  return std::string("extcall: expected '<name> pure' or "
                     "'<name> reads_global <ident>', got '") +
         std::string(spec) + "'";
}

Result<HarnessConfig, std::string> parse_config_text(std::string_view text,
                                                     HarnessConfig base) {
  HarnessConfig config = std::move(base);
  bool extcalls_reset = false;
  int line_no = 0;

  std::string_view rest = text;
  while (!rest.empty()) {
    size_t eol = rest.find('\n');
    std::string_view line =
        eol == std::string_view::npos ? rest : rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view{}
                                         : rest.substr(eol + 1);
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      return "config line " + std::to_string(line_no) + ": expected key = value";
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));

    if (key == "mode") {
      if (value == "deterministic") {
        config.mode = EvalMode::Deterministic;
      } else if (value == "exhaustive") {
        config.mode = EvalMode::Exhaustive;
      } else {
        return "config line " + std::to_string(line_no) +
               ": mode must be deterministic or exhaustive";
      }
    } else if (key == "step_budget") {
      int budget = 0;
      auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), budget);
      if (ec != std::errc() || ptr != value.data() + value.size() ||
          budget < 1) {
        return "config line " + std::to_string(line_no) +
               ": step_budget must be an integer >= 1";
      }
      config.step_budget = budget;
    } else if (key == "seed") {
      uint64_t seed = 0;
      auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        return "config line " + std::to_string(line_no) +
               ": seed must be a non-negative integer";
      }
      config.seed = seed;
    } else if (key == "extcall") {
      if (!extcalls_reset) {
        config.extcalls = ExtCallModel{};
        extcalls_reset = true;
      }
      auto r = apply_extcall_spec(config.extcalls, value);
      if (!r.ok()) {
        return "config line " + std::to_string(line_no) + ": " + r.error();
      }
    } else {
      return "config line " + std::to_string(line_no) + ": unknown key '" +
             std::string(key) + "'";
    }
  }
  return config;
}

Result<HarnessConfig, std::string> load_config_file(const std::string& path,
                                                    HarnessConfig base) {
  std::ifstream in(path);
  if (!in) return "cannot open config file '" + path + "'";
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), std::move(base));
}

}  // namespace minic
