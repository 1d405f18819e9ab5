#include <doctest.h>

#include "coaudit/error.hpp"
#include "coaudit/scanner.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace coaudit;

namespace {

const char* kLex = R"({
  "disease": {"hypertension": ["hypertension", "high blood pressure"], "lupus": ["lupus"]},
  "race": {"White": ["white"], "Black": ["black", "african american"]},
  "gender": {"female": ["female", "woman"], "male": ["male", "man"]}
})";

std::string filler(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += "word ";
  return s;
}

struct Fixture {
  Lexicon lex = parse_lexicon(kLex);
  CompiledMatcher matcher{lex};
  WindowConfig windows;
  Scanner scanner{matcher, windows};
  CountBlock scan(const std::string& text) {
    CountBlock b = scanner.empty_block();
    scanner.scan_into(text, b);
    return b;
  }
};

// Window order: 20, 100, 200, 500, document. Categories: White, Black, female, male.
constexpr std::size_t kDoc = 4;

}  // namespace

TEST_CASE("window configuration is validated") {
  WindowConfig w;
  CHECK_NOTHROW(w.validate());
  CHECK(w.count() == 5);
  CHECK(w.label(4) == "document");
  CHECK(w.index_of("200") == 2);
  w.sizes = {20, 20};
  CHECK_THROWS_AS(w.validate(), ConfigError);
  w.sizes = {21};
  CHECK_THROWS_AS(w.validate(), ConfigError);
  w.sizes = {0};
  CHECK_THROWS_AS(w.validate(), ConfigError);
  w.sizes = {100, 20};
  CHECK_THROWS_AS(w.validate(), ConfigError);
}

TEST_CASE("a short sentence co-occurs in every window") {
  Fixture f;
  const CountBlock b = f.scan("the Black man with hypertension");
  for (std::size_t w = 0; w < 5; ++w) {
    CHECK(b.total(0, w) == 1);
    CHECK(b.cell(0, w, 1) == 1);
    CHECK(b.cell(0, w, 3) == 1);
    CHECK(b.cell(0, w, 0) == 0);
    CHECK(b.none(0, w, 0) == 0);
    CHECK(b.none(0, w, 1) == 0);
    CHECK(b.total(1, w) == 0);
  }
}

TEST_CASE("half-width boundary is inclusive") {
  Fixture f;
  // disease at 0, race term at 50 -> inside window 100; at 51 -> outside
  const CountBlock in = f.scan("lupus " + filler(49) + "black");
  const CountBlock out = f.scan("lupus " + filler(50) + "black");
  CHECK(in.cell(1, 1, 1) == 1);
  CHECK(out.cell(1, 1, 1) == 0);
  CHECK(out.cell(1, 2, 1) == 1);
  CHECK(out.none(1, 1, 0) == 1);
  CHECK(out.cell(1, 0, 1) == 0);
}

TEST_CASE("a lone disease term has no co-occurrence") {
  Fixture f;
  const CountBlock b = f.scan("lupus");
  for (std::size_t w = 0; w < 5; ++w) {
    CHECK(b.total(1, w) == 1);
    for (std::size_t c = 0; c < 4; ++c) CHECK(b.cell(1, w, c) == 0);
    CHECK(b.none(1, w, 0) == 1);
    CHECK(b.none(1, w, 1) == 1);
  }
}

TEST_CASE("a term 201 words away reaches only the 500 and document windows") {
  Fixture f;
  const CountBlock b = f.scan("hypertension " + filler(200) + "female");
  CHECK(b.cell(0, 0, 2) == 0);
  CHECK(b.cell(0, 1, 2) == 0);
  CHECK(b.cell(0, 2, 2) == 0);
  CHECK(b.cell(0, 3, 2) == 1);
  CHECK(b.cell(0, kDoc, 2) == 1);
}

TEST_CASE("multi-word terms measure from the nearest token") {
  Fixture f;
  // "high blood pressure" spans 0-2; "african american" spans 13-14: distance 11
  const CountBlock b = f.scan("high blood pressure " + filler(10) + "african american");
  CHECK(b.cell(0, 0, 1) == 0);
  CHECK(b.cell(0, 1, 1) == 1);
  const CountBlock c = f.scan("high blood pressure " + filler(9) + "african american");
  CHECK(c.cell(0, 0, 1) == 1);
}

TEST_CASE("co-occurrence is binary per window and each disease hit opens a window") {
  Fixture f;
  const CountBlock b = f.scan("black black woman lupus black lupus");
  CHECK(b.total(1, 0) == 2);
  CHECK(b.cell(1, 0, 1) == 2);
  CHECK(b.cell(1, 0, 2) == 2);
  CHECK(b.cell(1, 0, 0) == 0);
  CHECK(b.none(1, 0, 0) == 0);
}

TEST_CASE("document window counts demographic terms anywhere in the document") {
  Fixture f;
  const CountBlock b = f.scan("white " + filler(600) + "lupus");
  CHECK(b.cell(1, 3, 0) == 0);
  CHECK(b.cell(1, kDoc, 0) == 1);
  CHECK(b.none(1, kDoc, 0) == 0);
  CHECK(b.none(1, kDoc, 1) == 1);
}

TEST_CASE("scan counts equal the pairwise brute-force oracle on random documents") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    testsupport::RandomCorpus gen(seed * 7919);
    const Lexicon lex = gen.lexicon(60);
    const CompiledMatcher matcher(lex);
    WindowConfig windows;
    if (seed % 3 == 0) windows.sizes = {2, 6, 40};
    if (seed % 5 == 0) windows.include_document = false;
    Scanner scanner(matcher, windows);
    CountBlock got = scanner.empty_block();
    CountBlock want = oracle::empty_block(lex, windows);
    for (int d = 0; d < 10; ++d) {
      const std::string doc = gen.document(d % 2 ? 2000 : 120);
      scanner.scan_into(doc, got);
      oracle::count(lex, windows, doc, want);
    }
    INFO("seed " << seed);
    REQUIRE(got == want);
  }
}

TEST_CASE("per-document counts satisfy the count invariants") {
  testsupport::RandomCorpus gen(5);
  const Lexicon lex = gen.lexicon(40);
  const CompiledMatcher matcher(lex);
  Scanner scanner(matcher, WindowConfig{});
  const std::size_t races = lex.names(Dimension::race).size();
  for (int i = 0; i < 300; ++i) {
    CountBlock b = scanner.empty_block();
    scanner.scan_into(gen.document(1500), b);
    for (std::size_t d = 0; d < b.diseases; ++d) {
      for (std::size_t w = 0; w < b.windows; ++w) {
        REQUIRE(b.total(d, w) == b.total(d, 0));
        for (std::size_t c = 0; c < b.categories; ++c) {
          REQUIRE(b.cell(d, w, c) <= b.total(d, w));
          if (w > 0) REQUIRE(b.cell(d, w - 1, c) <= b.cell(d, w, c));
        }
        for (std::size_t s = 0; s < 2; ++s) {
          REQUIRE(b.none(d, w, s) <= b.total(d, w));
          if (w > 0) REQUIRE(b.none(d, w - 1, s) >= b.none(d, w, s));
          // a window with no hit of the dimension contributes to no cell of it
          std::uint64_t max_cell = 0;
          for (std::size_t c = s ? races : 0; c < (s ? b.categories : races); ++c)
            max_cell = std::max(max_cell, b.cell(d, w, c));
          REQUIRE(max_cell + b.none(d, w, s) <= b.total(d, w));
        }
      }
    }
  }
}

TEST_CASE("scan_document reports the document's source") {
  const Lexicon lex = parse_lexicon(kLex);
  const CompiledMatcher matcher(lex);
  Document doc;
  doc.text = "lupus in a woman";
  doc.source = "books";
  const DocCounts dc = scan_document(doc, matcher, WindowConfig{});
  CHECK(dc.source == "books");
  CHECK(dc.counts.cell(1, 0, 2) == 1);
}
