#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "coaudit/cli.hpp"
#include "coaudit/error.hpp"
#include "coaudit/latex.hpp"
#include "coaudit/pipeline.hpp"
#include "coaudit/report.hpp"
#include "coaudit/scanner.hpp"
#include "coaudit/stats.hpp"
#include "coaudit/synth.hpp"
#include "coaudit/tokenizer.hpp"

namespace py = pybind11;
using namespace coaudit;

namespace {

std::optional<std::string> opt(const py::object& o) {
  if (o.is_none()) return std::nullopt;
  return o.cast<std::string>();
}

py::list hits_to_list(const CompiledMatcher& m, const std::vector<MatchHit>& hits) {
  py::list out;
  for (const auto& h : hits)
    out.append(py::make_tuple(std::string(to_string(h.dimension)),
                              m.layout().of(h.dimension)[h.category], h.span_start, h.span_end));
  return out;
}

/// Owns the matcher a Scanner points at.
struct PyScanner {
  std::shared_ptr<CompiledMatcher> matcher;
  Scanner scanner;
  PyScanner(std::shared_ptr<CompiledMatcher> m, WindowConfig w)
      : matcher(std::move(m)), scanner(*matcher, std::move(w)) {}
};

}  // namespace

PYBIND11_MODULE(_coaudit, mod) {
  mod.doc() = "Demographic co-occurrence counting over text corpora";

  // Later registrations are tried first, so subclasses follow the base.
  const auto& error = py::register_exception<Error>(mod, "Error");
  py::register_exception<ConfigError>(mod, "ConfigError", error.ptr());
  py::register_exception<FormatError>(mod, "FormatError", error.ptr());
  py::register_exception<MismatchError>(mod, "MismatchError", error.ptr());

  py::enum_<Dimension>(mod, "Dimension")
      .value("disease", Dimension::disease)
      .value("race", Dimension::race)
      .value("gender", Dimension::gender);
  py::enum_<Aggregation>(mod, "Aggregation")
      .value("micro", Aggregation::micro)
      .value("macro", Aggregation::macro);

  mod.def("strip_latex", &strip_latex);
  mod.def("tokenize", [](const std::string& text) {
    std::vector<std::string> out;
    for (const auto& t : tokenize(text)) out.emplace_back(t.text);
    return out;
  });

  py::class_<WindowConfig>(mod, "WindowConfig")
      .def(py::init([](std::vector<std::uint32_t> sizes, bool include_document) {
             WindowConfig w{std::move(sizes), include_document};
             w.validate();
             return w;
           }),
           py::arg("sizes") = std::vector<std::uint32_t>{20, 100, 200, 500},
           py::arg("include_document") = true)
      .def_readonly("sizes", &WindowConfig::sizes)
      .def_readonly("include_document", &WindowConfig::include_document)
      .def_property_readonly("labels", [](const WindowConfig& w) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < w.count(); ++i) out.push_back(w.label(i));
        return out;
      });

  py::class_<Lexicon>(mod, "Lexicon")
      .def_static("default", &default_lexicon)
      .def_static("parse", [](const std::string& text) { return parse_lexicon(text); })
      .def_static("load", &load_lexicon)
      .def("names", &Lexicon::names)
      .def_property_readonly("term_count", &Lexicon::term_count)
      .def_readonly("unfilled_disease_slots", &Lexicon::unfilled_disease_slots)
      .def_readonly("warnings", &Lexicon::warnings)
      .def("hash", &Lexicon::hash);

  py::class_<CompiledMatcher, std::shared_ptr<CompiledMatcher>>(mod, "Matcher")
      .def(py::init<const Lexicon&>())
      .def("find_matches", [](const CompiledMatcher& m, const std::string& text) {
        return hits_to_list(m, m.find_matches(tokenize(text)));
      }, "(dimension, category, first_token, last_token) for every hit")
      .def_property_readonly("lexicon_hash", &CompiledMatcher::lexicon_hash);

  py::class_<CooccurrenceMatrix>(mod, "Matrix")
      .def(py::init<>())
      .def_property_readonly("sources", [](const CooccurrenceMatrix& m) {
        std::vector<std::string> out;
        for (const auto& [s, b] : m.sources()) out.push_back(s);
        return out;
      })
      .def_property_readonly("diseases", [](const CooccurrenceMatrix& m) { return m.meta().layout.diseases; })
      .def_property_readonly("windows", [](const CooccurrenceMatrix& m) { return m.meta().windows; })
      .def_property_readonly("lexicon_hash", [](const CooccurrenceMatrix& m) { return m.meta().lexicon_hash; })
      .def("categories", [](const CooccurrenceMatrix& m, Dimension d) { return m.meta().layout.of(d); })
      .def("cell", &CooccurrenceMatrix::cell)
      .def("total", &CooccurrenceMatrix::total)
      .def("no_demographic", &CooccurrenceMatrix::no_demographic)
      .def("__eq__", &CooccurrenceMatrix::operator==)
      .def("__add__", [](const CooccurrenceMatrix& a, const CooccurrenceMatrix& b) { return merge(a, b); })
      .def("to_snapshot", &to_snapshot)
      .def_static("from_snapshot", [](const std::string& s) { return from_snapshot(s); })
      .def("save", [](const CooccurrenceMatrix& m, const std::filesystem::path& p) { snapshot(m, p); })
      .def_static("load", &restore)
      .def("counts_csv", &report::counts_csv)
      .def("totals_csv", &report::totals_csv);

  py::class_<PyScanner>(mod, "Scanner")
      .def(py::init<std::shared_ptr<CompiledMatcher>, WindowConfig>(), py::arg("matcher"),
           py::arg("windows") = WindowConfig{})
      .def("scan", [](PyScanner& s, const std::string& text, const std::string& source) {
        CooccurrenceMatrix m(make_run_meta(*s.matcher, s.scanner.windows()));
        CountBlock& b = m.block(source);
        b = s.scanner.empty_block();
        s.scanner.scan_into(text, b);
        return m;
      }, py::arg("text"), py::arg("source") = "doc", "Counts for one plain-text document");

  mod.def("merge", [](const CooccurrenceMatrix& a, const CooccurrenceMatrix& b) { return merge(a, b); });

  mod.def("run_scan", [](const std::filesystem::path& config, std::optional<std::size_t> workers) {
    RunConfig cfg = load_run_config(config);
    if (workers) cfg.workers = *workers;
    cfg.validate();
    const CompiledMatcher matcher(load_configured_lexicon(cfg));
    py::gil_scoped_release release;
    return run_scan(cfg, matcher).matrix;
  }, py::arg("config"), py::arg("workers") = py::none());

  mod.def("representation_pct", [](const CooccurrenceMatrix& m, const std::string& disease,
                                   const std::string& window, Dimension dim, const std::string& category,
                                   Aggregation agg, const py::object& source) -> std::optional<double> {
    const Percent p = representation_pct(m, disease, window, dim, category, agg, opt(source));
    if (p.no_windows) return std::nullopt;
    return p.value;
  }, py::arg("matrix"), py::arg("disease"), py::arg("window"), py::arg("dimension"),
     py::arg("category"), py::arg("aggregation") = Aggregation::micro, py::arg("source") = py::none());

  mod.def("shares", [](const CooccurrenceMatrix& m, const std::string& window, const py::object& disease,
                       const py::object& source, bool four_race) {
    ShareTable t = demographic_shares(m, window, Scope{opt(disease), opt(source)});
    if (four_race) t = renormalize(t, Dimension::race, kFourRaces);
    py::dict out;
    for (const auto& r : t.rows) {
      const std::string dim(to_string(r.dimension));
      if (!out.contains(dim)) out[dim.c_str()] = py::dict();
      out[dim.c_str()][r.category.c_str()] = r.share ? py::cast(*r.share) : py::none();
    }
    return out;
  }, py::arg("matrix"), py::arg("window"), py::arg("disease") = py::none(),
     py::arg("source") = py::none(), py::arg("four_race") = false,
     "{dimension: {category: share or None}}");

  mod.def("window_profile", [](const CooccurrenceMatrix& m, const std::string& disease, Dimension dim,
                               const std::string& category, Aggregation agg) {
    std::vector<std::pair<std::string, std::optional<double>>> out;
    for (const auto& p : window_profile(m, disease, dim, category, agg))
      out.emplace_back(p.window, p.percent.no_windows ? std::nullopt : std::optional<double>(p.percent.value));
    return out;
  }, py::arg("matrix"), py::arg("disease"), py::arg("dimension"), py::arg("category"),
     py::arg("aggregation") = Aggregation::macro);

  py::class_<BaselineTable>(mod, "Baseline")
      .def_static("census_2020", &census_2020_baseline)
      .def_static("load", [](const std::filesystem::path& p, const py::object& name) {
        return name.is_none() ? load_baseline(p) : load_baseline(p, name.cast<std::string>());
      }, py::arg("path"), py::arg("name") = py::none())
      .def_static("parse", [](const std::string& text, const std::string& name) { return parse_baseline(text, name); })
      .def_readonly("name", &BaselineTable::name)
      .def("lookup", &BaselineTable::lookup, py::arg("disease"), py::arg("dimension"), py::arg("category"));

  mod.def("compare", [](const CooccurrenceMatrix& m, const BaselineTable& baseline,
                        const std::string& window, bool four_race) {
    std::vector<ShareTable> tables;
    for (auto& t : report::share_tables(m, window))
      if (t.source == kAllScope) tables.push_back(std::move(t));
    py::list out;
    for (const auto& r : compare_to_baseline(tables, baseline, four_race).rows) {
      py::dict row;
      row["baseline"] = r.baseline;
      row["disease"] = r.disease;
      row["dimension"] = std::string(to_string(r.dimension));
      row["category"] = r.category;
      row["corpus"] = r.corpus;
      row["reference"] = r.reference;
      row["difference"] = r.difference;
      row["ratio"] = r.ratio;
      out.append(row);
    }
    return out;
  }, py::arg("matrix"), py::arg("baseline"), py::arg("window") = "100", py::arg("four_race") = false);

  mod.def("synth", [](const std::filesystem::path& spec, std::uint64_t seed, const std::filesystem::path& out) {
    const SynthSpec s = load_synth_spec(spec);
    const Lexicon lex = s.lexicon_path ? load_lexicon(*s.lexicon_path) : default_lexicon();
    const SynthResult r = make_synthetic_corpus(s, lex, seed, out);
    return py::make_tuple(r.truth, r.run_config);
  }, py::arg("spec"), py::arg("seed"), py::arg("out"), "Returns (ground truth matrix, run config path)");

  mod.def("main", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    py::print(out.str(), py::arg("end") = "");
    if (!err.str().empty()) py::print(err.str(), py::arg("end") = "", py::arg("file") = py::module_::import("sys").attr("stderr"));
    return code;
  }, "Runs the command line with the given arguments and returns the exit code");
}
