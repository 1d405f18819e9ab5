#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coaudit {

/// One corpus source: a label and the JSONL files (or directories of them)
/// holding its documents.
struct SourceSpec {
  std::string label;
  std::vector<std::filesystem::path> paths;
  std::string text_field = "text";
};

struct Document {
  std::string text;  ///< LaTeX-stripped text
  std::string source;
  std::map<std::string, std::string> meta;
  std::size_t byte_len = 0;  ///< size of the raw record line
};

struct IngestStats {
  std::uint64_t records_read = 0;
  std::uint64_t records_skipped = 0;
  std::uint64_t bytes_read = 0;
  std::uint64_t parse_errors = 0;

  IngestStats& operator+=(const IngestStats& o) {
    records_read += o.records_read;
    records_skipped += o.records_skipped;
    bytes_read += o.bytes_read;
    parse_errors += o.parse_errors;
    return *this;
  }
  bool operator==(const IngestStats&) const = default;
};

/// Expands directories (recursively, sorted by path) and checks that every
/// listed path exists. Throws ConfigError for a missing path or when no
/// readable file results.
std::vector<std::filesystem::path> resolve_files(const SourceSpec& spec);

/// Reads newline-terminated lines from a plain or gzip file. Compression is
/// detected from the magic bytes. Memory use is one read chunk plus the
/// longest line.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  /// Next line without its terminator; false at end of file.
  bool next(std::string& line);
  /// Uncompressed bytes consumed so far, terminators included.
  std::uint64_t bytes_read() const { return bytes_; }
  bool compressed() const { return gz_ != nullptr; }

 private:
  bool fill();

  std::FILE* file_ = nullptr;
  void* gz_ = nullptr;
  std::vector<char> buf_;
  std::size_t pos_ = 0;
  std::size_t len_ = 0;
  bool eof_ = false;
  std::uint64_t bytes_ = 0;
};

/// Streams the raw (non-blank) record lines of one source in file order.
/// `byte_limit` > 0 stops after the line that crosses that many bytes.
class CorpusStream {
 public:
  explicit CorpusStream(SourceSpec spec, std::uint64_t byte_limit = 0);

  bool next(std::string& raw);
  const SourceSpec& spec() const { return spec_; }
  std::uint64_t bytes_read() const { return done_bytes_ + (reader_ ? reader_->bytes_read() : 0); }

 private:
  SourceSpec spec_;
  std::vector<std::filesystem::path> files_;
  std::size_t file_index_ = 0;
  std::unique_ptr<LineReader> reader_;
  std::uint64_t done_bytes_ = 0;
  std::uint64_t limit_ = 0;
};

/// open_corpus: a stream over the source's records.
inline CorpusStream open_corpus(const SourceSpec& spec,
                                std::uint64_t byte_limit = 0) {
  return CorpusStream(spec, byte_limit);
}

/// Parses one record line into a Document and updates `stats`
/// (records_read, records_skipped, parse_errors, bytes_read). Malformed JSON,
/// a missing text field or a non-string text field skip the record.
std::optional<Document> parse_record(std::string_view raw,
                                     const SourceSpec& spec,
                                     IngestStats& stats, bool with_meta = true);

}  // namespace coaudit
