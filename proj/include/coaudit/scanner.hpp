#pragma once

#include <string_view>
#include <vector>

#include "coaudit/counts.hpp"
#include "coaudit/ingest.hpp"
#include "coaudit/lexicon.hpp"

namespace coaudit {

/// Per-document slice of the co-occurrence matrix.
struct DocCounts {
  std::string source;
  CountBlock counts;
};

/// Word distance between two token spans; 0 when they overlap.
constexpr std::size_t span_distance(std::size_t a0, std::size_t a1,
                                    std::size_t b0, std::size_t b1) noexcept {
  if (b0 > a1) return b0 - a1;
  if (a0 > b1) return a0 - b1;
  return 0;
}

/// Counts demographic co-occurrences around every disease hit, for every
/// configured window, in one pass over the document.
///
/// Each disease hit opens one window per size. A demographic category
/// co-occurs with it in window w when the nearest word distance between the
/// two spans is at most w/2; in the document window when the category occurs
/// anywhere in the document. Co-occurrence is binary per (hit, window,
/// category). Reuses internal buffers, so one Scanner per thread.
class Scanner {
 public:
  Scanner(const CompiledMatcher& matcher, WindowConfig windows);

  /// Adds the document's counts to `block` (shape from empty_block()).
  void scan_into(std::string_view text, CountBlock& block);
  DocCounts scan(const Document& doc);

  CountBlock empty_block() const;
  const WindowConfig& windows() const { return windows_; }
  const CompiledMatcher& matcher() const { return *matcher_; }

 private:
  struct Span {
    std::size_t start;
    std::size_t end;
  };

  const CompiledMatcher* matcher_;
  WindowConfig windows_;
  std::vector<Token> tokens_;
  std::vector<MatchHit> hits_;
  MatchScratch scratch_;
  std::vector<std::vector<Span>> demo_hits_;
  std::vector<bool> any_;
};

DocCounts scan_document(const Document& doc, const CompiledMatcher& matcher,
                        const WindowConfig& windows);

}  // namespace coaudit
