#include <doctest.h>

#include "coaudit/error.hpp"
#include "coaudit/pipeline.hpp"
#include "coaudit/synth.hpp"
#include "support.hpp"

using namespace coaudit;
using testsupport::TempDir;

namespace {

SynthSpec small_spec(double p_black, double p_female, std::uint64_t n = 1000) {
  SynthSpec spec;
  spec.docs_per_file = 400;
  SynthSource src;
  src.label = "synthetic";
  src.windows_per_disease = {{"hypertension", n}, {"lupus", n / 2}};
  src.rates = {{"hypertension", Dimension::race, "Black", "100", p_black},
               {"lupus", Dimension::gender, "female", "20", p_female}};
  spec.sources.push_back(src);
  return spec;
}

CooccurrenceMatrix scan_generated(const SynthResult& r) {
  const RunConfig cfg = load_run_config(r.run_config);
  const CompiledMatcher matcher(load_configured_lexicon(cfg));
  return run_scan(cfg, matcher).matrix;
}

}  // namespace

TEST_CASE("degenerate rates plant exactly zero or every window") {
  TempDir dir("synth");
  const auto r = make_synthetic_corpus(small_spec(0.0, 1.0), default_lexicon(), 1, dir.path());
  const auto& t = r.truth;
  CHECK(t.total("synthetic", "hypertension", "100") == 1000);
  CHECK(t.cell("synthetic", "hypertension", "100", Dimension::race, "Black") == 0);
  CHECK(t.cell("synthetic", "lupus", "20", Dimension::gender, "female") == 500);
  CHECK(t.cell("synthetic", "lupus", "document", Dimension::gender, "female") == 500);
  CHECK(t.cell("synthetic", "lupus", "20", Dimension::race, "White") == 0);
  CHECK(scan_generated(r).sources() == t.sources());
}

TEST_CASE("ground truth records the planted count and the scan finds it") {
  TempDir dir("synth");
  const auto r = make_synthetic_corpus(small_spec(0.5, 0.3), default_lexicon(), 2, dir.path());
  const auto planted = r.truth.cell("synthetic", "hypertension", "100", Dimension::race, "Black");
  CHECK(planted > 400);
  CHECK(planted < 600);
  // inherited by wider windows, absent from narrower ones
  CHECK(r.truth.cell("synthetic", "hypertension", "500", Dimension::race, "Black") == planted);
  CHECK(r.truth.cell("synthetic", "hypertension", "20", Dimension::race, "Black") == 0);
  CHECK(scan_generated(r) .sources() == r.truth.sources());
  CHECK(std::filesystem::exists(dir / "groundtruth/counts.csv"));
  CHECK(std::filesystem::exists(dir / "groundtruth/totals.csv"));
  CHECK(restore(dir / "groundtruth/snapshot.json") == r.truth);
  CHECK(r.documents == 1500);
  CHECK(r.files.size() == 4);
}

TEST_CASE("regeneration with the same seed is byte-identical") {
  TempDir a("synth"), b("synth"), c("synth");
  const auto ra = make_synthetic_corpus(small_spec(0.5, 0.3, 300), default_lexicon(), 9, a.path());
  const auto rb = make_synthetic_corpus(small_spec(0.5, 0.3, 300), default_lexicon(), 9, b.path());
  const auto rc = make_synthetic_corpus(small_spec(0.5, 0.3, 300), default_lexicon(), 10, c.path());
  REQUIRE(ra.files.size() == rb.files.size());
  for (std::size_t i = 0; i < ra.files.size(); ++i) {
    const auto rel = std::filesystem::relative(ra.files[i], a.path());
    CHECK(testsupport::read_file(ra.files[i]) == testsupport::read_file(b / rel.string()));
  }
  CHECK(testsupport::read_file(a / "groundtruth/snapshot.json") ==
        testsupport::read_file(b / "groundtruth/snapshot.json"));
  CHECK(testsupport::read_file(ra.files[0]) != testsupport::read_file(rc.files[0]));
}

TEST_CASE("invalid rate tables are rejected") {
  TempDir dir("synth");
  CHECK_THROWS_AS(make_synthetic_corpus(small_spec(1.5, 0.0), default_lexicon(), 1, dir.path()), ConfigError);
  CHECK_THROWS_AS(make_synthetic_corpus(small_spec(-0.1, 0.0), default_lexicon(), 1, dir.path()), ConfigError);

  auto decreasing = small_spec(0.5, 0.0);
  decreasing.sources[0].rates.push_back({"hypertension", Dimension::race, "Black", "200", 0.2});
  CHECK_THROWS_AS(make_synthetic_corpus(decreasing, default_lexicon(), 1, dir.path()), ConfigError);

  auto unknown = small_spec(0.5, 0.0);
  unknown.sources[0].rates.push_back({"gout", Dimension::race, "Black", "100", 0.2});
  CHECK_THROWS_AS(make_synthetic_corpus(unknown, default_lexicon(), 1, dir.path()), ConfigError);

  auto bad_window = small_spec(0.5, 0.0);
  bad_window.sources[0].rates.push_back({"lupus", Dimension::race, "Black", "50", 0.2});
  CHECK_THROWS_AS(make_synthetic_corpus(bad_window, default_lexicon(), 1, dir.path()), ConfigError);
}

TEST_CASE("synth spec files parse") {
  TempDir dir("synth");
  const auto spec = parse_synth_spec(R"({
    "windows": {"sizes": [20, 100], "include_document": false},
    "docs_per_file": 10, "decorate": false,
    "sources": [{"label": "x", "windows_per_disease": {"lupus": 5},
                 "rates": [{"disease": "lupus", "dimension": "race", "category": "Black",
                            "window": 100, "p": 0.25}]}]})", dir.path());
  CHECK(spec.windows.sizes == std::vector<std::uint32_t>{20, 100});
  CHECK_FALSE(spec.windows.include_document);
  CHECK(spec.docs_per_file == 10);
  REQUIRE(spec.sources.size() == 1);
  CHECK(spec.sources[0].rates[0].window == "100");
  CHECK(spec.sources[0].rates[0].p == 0.25);
  CHECK_THROWS_AS(parse_synth_spec(R"({"sources": [], "bogus": 1})", dir.path()), ConfigError);
  CHECK_THROWS_AS(parse_synth_spec("{", dir.path()), ConfigError);
}
