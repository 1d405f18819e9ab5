#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "coaudit/counts.hpp"
#include "coaudit/lexicon.hpp"

namespace coaudit {

/// Identifies the configuration a matrix was produced under. Matrices merge
/// only when everything except the corpus fingerprint agrees.
struct RunMeta {
  std::uint64_t lexicon_hash = 0;
  LexiconLayout layout;
  WindowConfig windows;
  /// Wrapping sum of the FNV-1a hash of every record scanned.
  std::uint64_t corpus_fingerprint = 0;

  bool compatible(const RunMeta& o) const {
    return lexicon_hash == o.lexicon_hash && layout == o.layout &&
           windows == o.windows;
  }
  bool operator==(const RunMeta&) const = default;
};

RunMeta make_run_meta(const CompiledMatcher& matcher, const WindowConfig& windows);

/// Co-occurrence counts keyed by (source, disease, window, dimension,
/// category), with per-(source, disease, window) window totals and
/// no-demographic counts. A default-constructed matrix carries no run
/// metadata and acts as the identity for merge.
class CooccurrenceMatrix {
 public:
  CooccurrenceMatrix() = default;
  explicit CooccurrenceMatrix(RunMeta meta) : meta_(std::move(meta)), has_meta_(true) {}

  bool has_meta() const { return has_meta_; }
  const RunMeta& meta() const { return meta_; }
  bool empty() const { return sources_.empty(); }
  const std::map<std::string, CountBlock>& sources() const { return sources_; }

  /// Block for `source`, created zeroed on first use.
  CountBlock& block(const std::string& source);
  const CountBlock* find(const std::string& source) const;
  void add(const std::string& source, const CountBlock& counts);
  void add_fingerprint(std::uint64_t h) { meta_.corpus_fingerprint += h; }

  /// Named lookups. Unknown disease, window or category names throw
  /// ConfigError; a source without a block reads as zero.
  std::uint64_t cell(const std::string& source, std::string_view disease,
                     std::string_view window, Dimension dim,
                     std::string_view category) const;
  std::uint64_t total(const std::string& source, std::string_view disease,
                      std::string_view window) const;
  std::uint64_t no_demographic(const std::string& source,
                               std::string_view disease,
                               std::string_view window, Dimension dim) const;

  std::size_t disease_index(std::string_view disease) const;
  std::size_t window_index(std::string_view window) const;
  std::size_t category_index(Dimension dim, std::string_view category) const;

  bool operator==(const CooccurrenceMatrix& o) const {
    return has_meta_ == o.has_meta_ && meta_ == o.meta_ && sources_ == o.sources_;
  }

 private:
  RunMeta meta_;
  bool has_meta_ = false;
  std::map<std::string, CountBlock> sources_;
};

/// Pointwise sum. Throws MismatchError when run metadata is incompatible.
CooccurrenceMatrix merge(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b);
/// In-place form of merge.
void merge_into(CooccurrenceMatrix& into, const CooccurrenceMatrix& from);

inline constexpr int kSnapshotVersion = 1;

/// Versioned, checksummed JSON snapshot. Output is byte-stable for equal
/// matrices.
std::string to_snapshot(const CooccurrenceMatrix& m);
/// Throws FormatError on corruption and on version mismatch.
CooccurrenceMatrix from_snapshot(std::string_view text);

void snapshot(const CooccurrenceMatrix& m, const std::filesystem::path& path);
CooccurrenceMatrix restore(const std::filesystem::path& path);

}  // namespace coaudit
