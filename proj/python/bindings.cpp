#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minic/config.hpp"
#include "minic/harness.hpp"
#include "minic/keywords.hpp"
#include "minic/parser.hpp"
#include "minic/printer.hpp"
#include "minic/rename.hpp"

namespace py = pybind11;

namespace {

struct PyProgram {
  minic::Program program;
};

PyProgram parse_source(const std::string& text) {
  auto parsed = minic::parse_text(text);
  if (!parsed.ok()) {
    const auto& e = parsed.error();
    throw py::value_error("line " + std::to_string(e.line) + ", column " +
                          std::to_string(e.column) + ": " + e.message);
  }
  return PyProgram{parsed.take()};
}

minic::HarnessConfig make_config(const std::string& mode, int budget,
                                 const std::vector<std::string>& extcalls) {
  minic::HarnessConfig config;
  if (mode == "exhaustive") {
    config.mode = minic::EvalMode::Exhaustive;
  } else if (mode != "deterministic") {
    throw py::value_error("mode must be 'deterministic' or 'exhaustive'");
  }
  if (budget < 1) throw py::value_error("budget must be >= 1");
  config.step_budget = budget;
  if (!extcalls.empty()) {
    config.extcalls = minic::ExtCallModel{};
    for (const std::string& spec : extcalls) {
      auto r = minic::apply_extcall_spec(config.extcalls, spec);
      if (!r.ok()) throw py::value_error(r.error());
    }
  }
  return config;
}

py::dict behavior_to_dict(const minic::Behavior& b) {
  py::dict d;
  switch (b.kind) {
    case minic::BehaviorKind::Terminates: d["kind"] = "terminates"; break;
    case minic::BehaviorKind::GoesWrong: d["kind"] = "goes_wrong"; break;
    case minic::BehaviorKind::Unknown: d["kind"] = "unknown"; break;
  }
  d["code"] = b.code;
  py::list trace;
  for (const auto& ev : b.trace) trace.append(minic::serialize_event(ev));
  d["trace"] = trace;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mini-C rename refactoring toolkit";

  py::class_<PyProgram>(m, "Program")
      .def("__str__",
           [](const PyProgram& p) { return minic::pretty_print(p.program); })
      .def("__eq__", [](const PyProgram& a, const PyProgram& b) {
        return a.program == b.program;
      });

  m.def("parse", &parse_source, py::arg("text"),
        "Parse mini-C source text into a Program.");

  m.def(
      "pretty",
      [](const PyProgram& p) { return minic::pretty_print(p.program); },
      py::arg("program"));

  m.def("is_c_keyword", [](const std::string& text) {
    return minic::is_c_keyword(text);
  });

  m.def(
      "rename",
      [](const PyProgram& p, const std::string& old_name,
         const std::string& new_name) {
        if (minic::is_c_keyword(new_name)) {
          throw py::value_error(minic::rename_msg::kKeyword);
        }
        auto request = minic::RenameRequest::make(minic::intern(old_name),
                                                  minic::intern(new_name));
        if (!request) {
          throw py::value_error("old and new names are identical");
        }
        auto renamed = minic::rename_global_var(request->old_name,
                                                request->new_name, p.program);
        if (!renamed.ok()) throw py::value_error(renamed.error().message);
        return PyProgram{renamed.take()};
      },
      py::arg("program"), py::arg("old_name"), py::arg("new_name"),
      "Rename a global variable; raises ValueError with the engine's "
      "diagnostic when the rename is refused.");

  m.def(
      "check",
      [](const PyProgram& p, const std::string& old_name,
         const std::string& new_name) {
        auto report = minic::check_rename_precondition(
            minic::intern(old_name), minic::intern(new_name), p.program);
        py::dict d;
        py::list clauses;
        for (const auto& c : report.clauses) {
          clauses.append(py::make_tuple(c.name, c.holds));
        }
        d["clauses"] = clauses;
        d["pass"] = report.pass();
        return d;
      },
      py::arg("program"), py::arg("old_name"), py::arg("new_name"));

  m.def(
      "run",
      [](const PyProgram& p, const std::string& mode, int budget,
         const std::vector<std::string>& extcalls) {
        auto config = make_config(mode, budget, extcalls);
        auto behaviors = minic::run(p.program, config.extcalls, config.mode,
                                    config.step_budget);
        if (!behaviors.ok()) throw py::value_error(behaviors.error().message);
        py::list out;
        for (const auto& b : behaviors.value()) out.append(behavior_to_dict(b));
        return out;
      },
      py::arg("program"), py::arg("mode") = "deterministic",
      py::arg("budget") = 10000,
      py::arg("extcalls") = std::vector<std::string>{});

  m.def(
      "diff",
      [](const PyProgram& p, const std::string& old_name,
         const std::string& new_name, const std::string& mode, int budget,
         const std::vector<std::string>& extcalls, bool unsafe) {
        auto config = make_config(mode, budget, extcalls);
        minic::Ident x = minic::intern(old_name);
        minic::Ident y = minic::intern(new_name);
        if (!unsafe && !config.extcalls.compliant_for(x, y)) {
          throw py::value_error(
              "external-call model is not compliant for this renaming");
        }
        auto outcome = minic::diff_behaviors(p.program, x, y, config);
        if (!outcome.ok()) throw py::value_error(outcome.error());
        py::dict d;
        d["pass"] = outcome.value().pass;
        d["divergence"] = outcome.value().divergence;
        py::list original, renamed;
        for (const auto& b : outcome.value().original)
          original.append(behavior_to_dict(b));
        for (const auto& b : outcome.value().renamed)
          renamed.append(behavior_to_dict(b));
        d["original"] = original;
        d["renamed"] = renamed;
        return d;
      },
      py::arg("program"), py::arg("old_name"), py::arg("new_name"),
      py::arg("mode") = "deterministic", py::arg("budget") = 10000,
      py::arg("extcalls") = std::vector<std::string>{},
      py::arg("unsafe") = false);

  m.def(
      "proptest",
      [](int iterations, uint64_t seed, int budget) {
        if (iterations < 1) throw py::value_error("iterations must be >= 1");
        minic::PropTestOptions opts;
        opts.iterations = iterations;
        opts.seed = seed;
        opts.step_budget = budget;
        minic::PropTestReport report = minic::run_property_suite(opts);
        py::dict d;
        d["pass"] = report.pass();
        d["report"] = report.to_string();
        d["renames_ok"] = report.renames_ok;
        d["renames_refused"] = report.renames_refused;
        d["counterexamples"] = report.counterexamples_total;
        return d;
      },
      py::arg("iterations") = 100, py::arg("seed") = 1,
      py::arg("budget") = 10000);
}
