#include <doctest.h>

#include <zlib.h>

#include "coaudit/error.hpp"
#include "coaudit/ingest.hpp"
#include "support.hpp"

using namespace coaudit;
using testsupport::TempDir;

namespace {

std::vector<Document> read_all(const SourceSpec& spec, IngestStats& stats,
                               std::uint64_t limit = 0) {
  CorpusStream stream(spec, limit);
  std::vector<Document> docs;
  std::string raw;
  while (stream.next(raw))
    if (auto d = parse_record(raw, spec, stats)) docs.push_back(std::move(*d));
  return docs;
}

void write_gzip(const std::filesystem::path& p, const std::string& text) {
  gzFile gz = gzopen(p.string().c_str(), "wb");
  REQUIRE(gz != nullptr);
  gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
  gzclose(gz);
}

}  // namespace

TEST_CASE("three well-formed records stream in order") {
  TempDir dir("ingest");
  testsupport::write_file(dir / "a.jsonl",
                          R"({"text": "one", "meta": {"url": "u1", "lang": "en", "n": 3}})"
                          "\n{\"text\": \"two\"}\n{\"text\": \"\\\\emph{three}\"}\n");
  SourceSpec spec{"wiki", {dir / "a.jsonl"}};
  IngestStats stats;
  const auto docs = read_all(spec, stats);
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].text == "one");
  CHECK(docs[0].source == "wiki");
  CHECK(docs[0].meta == std::map<std::string, std::string>{{"meta.lang", "en"}, {"meta.url", "u1"}});
  CHECK(docs[2].text == " three ");
  CHECK(stats.records_read == 3);
  CHECK(stats.records_skipped == 0);
  CHECK(stats.parse_errors == 0);
}

TEST_CASE("malformed and textless records are skipped and counted") {
  TempDir dir("ingest");
  testsupport::write_file(dir / "a.jsonl",
                          "{\"text\": \"ok\"}\n{\"text\": \"trunc\n{\"title\": \"x\"}\n"
                          "{\"text\": 5}\n[1,2]\n\n{\"text\": \"last\"}");
  SourceSpec spec{"s", {dir / "a.jsonl"}};
  IngestStats stats;
  const auto docs = read_all(spec, stats);
  REQUIRE(docs.size() == 2);
  CHECK(docs[1].text == "last");
  CHECK(stats.records_read == 6);
  CHECK(stats.records_skipped == 4);
  CHECK(stats.parse_errors == 2);
  CHECK(stats.records_read == docs.size() + stats.records_skipped);
}

TEST_CASE("a custom text field is honoured") {
  TempDir dir("ingest");
  testsupport::write_file(dir / "a.jsonl", "{\"body\": \"b\", \"text\": \"t\"}\n");
  SourceSpec spec{"s", {dir / "a.jsonl"}, "body"};
  IngestStats stats;
  const auto docs = read_all(spec, stats);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].text == "b");
  CHECK(docs[0].meta.at("text") == "t");
}

TEST_CASE("an empty file yields no records") {
  TempDir dir("ingest");
  testsupport::write_file(dir / "empty.jsonl", "");
  SourceSpec spec{"s", {dir / "empty.jsonl"}};
  IngestStats stats;
  CHECK(read_all(spec, stats).empty());
  CHECK(stats == IngestStats{});
}

TEST_CASE("gzip input is detected by content, not extension") {
  TempDir dir("ingest");
  std::string text;
  for (int i = 0; i < 5000; ++i) text += testsupport::jsonl_line("doc " + std::to_string(i));
  write_gzip(dir / "shard.bin", text);
  testsupport::write_file(dir / "plain.gz", text);
  for (const char* name : {"shard.bin", "plain.gz"}) {
    SourceSpec spec{"s", {dir / name}};
    IngestStats stats;
    const auto docs = read_all(spec, stats);
    REQUIRE(docs.size() == 5000);
    CHECK(docs[4999].text == "doc 4999");
  }
  LineReader gz(dir / "shard.bin");
  CHECK(gz.compressed());
  LineReader plain(dir / "plain.gz");
  CHECK_FALSE(plain.compressed());
}

TEST_CASE("CRLF line endings and a long line are handled") {
  TempDir dir("ingest");
  const std::string big(3 << 20, 'x');
  testsupport::write_file(dir / "a.jsonl", "{\"text\": \"a\"}\r\n{\"text\": \"" + big + "\"}\r\n");
  SourceSpec spec{"s", {dir / "a.jsonl"}};
  IngestStats stats;
  const auto docs = read_all(spec, stats);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].text == "a");
  CHECK(docs[1].text.size() == big.size());
}

TEST_CASE("directories expand recursively in sorted order") {
  TempDir dir("ingest");
  testsupport::write_file(dir / "src/b.jsonl", testsupport::jsonl_line("b"));
  testsupport::write_file(dir / "src/a.jsonl", testsupport::jsonl_line("a"));
  testsupport::write_file(dir / "src/sub/c.jsonl", testsupport::jsonl_line("c"));
  SourceSpec spec{"s", {dir / "src"}};
  IngestStats stats;
  const auto docs = read_all(spec, stats);
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].text == "a");
  CHECK(docs[1].text == "b");
  CHECK(docs[2].text == "c");
}

TEST_CASE("missing paths are configuration errors") {
  SourceSpec spec{"s", {"/nonexistent/corpus.jsonl"}};
  CHECK_THROWS_AS(resolve_files(spec), ConfigError);
  TempDir dir("ingest");
  std::filesystem::create_directories(dir / "empty");
  CHECK_THROWS_AS(resolve_files(SourceSpec{"s", {dir / "empty"}}), ConfigError);
}

TEST_CASE("a byte limit stops after the line that crosses it") {
  TempDir dir("ingest");
  std::string text;
  for (int i = 0; i < 100; ++i) text += testsupport::jsonl_line("doc " + std::to_string(100 + i));
  testsupport::write_file(dir / "a.jsonl", text);
  const std::size_t line = testsupport::jsonl_line("doc 100").size();
  SourceSpec spec{"s", {dir / "a.jsonl"}};
  IngestStats stats;
  const auto docs = read_all(spec, stats, line * 20 + 1);
  CHECK(docs.size() == 21);
}
