#include "coaudit/scanner.hpp"

#include <algorithm>

namespace coaudit {

Scanner::Scanner(const CompiledMatcher& matcher, WindowConfig windows)
    : matcher_(&matcher), windows_(std::move(windows)) {
  windows_.validate();
  demo_hits_.resize(matcher.layout().demographic_count());
  any_.resize(2 * windows_.count());
}

CountBlock Scanner::empty_block() const {
  const auto& layout = matcher_->layout();
  return CountBlock(layout.diseases.size(), windows_.count(),
                    layout.demographic_count());
}

void Scanner::scan_into(std::string_view text, CountBlock& block) {
  tokenize(text, tokens_);
  matcher_->find_matches(tokens_, hits_, scratch_);
  if (hits_.empty()) return;

  const auto& layout = matcher_->layout();
  const std::size_t races = layout.races.size();
  for (auto& v : demo_hits_) v.clear();
  bool any_disease = false;
  for (const auto& h : hits_) {
    if (h.dimension == Dimension::disease) {
      any_disease = true;
    } else {
      const std::size_t c = h.dimension == Dimension::race ? h.category : races + h.category;
      demo_hits_[c].push_back({h.span_start, h.span_end});
    }
  }
  if (!any_disease) return;

  const std::size_t nwin = windows_.count();
  const std::size_t nfinite = windows_.sizes.size();
  const std::size_t ncat = demo_hits_.size();

  for (const auto& h : hits_) {
    if (h.dimension != Dimension::disease) continue;
    const std::size_t d = h.category;
    const std::size_t s = h.span_start;
    const std::size_t e = h.span_end;
    std::fill(any_.begin(), any_.end(), false);

    for (std::size_t c = 0; c < ncat; ++c) {
      const auto& list = demo_hits_[c];
      if (list.empty()) continue;
      const std::size_t slot = c < races ? 0 : 1;

      // Hits in one category do not overlap, so starts and ends are both
      // sorted; the nearest hit is adjacent to the first start beyond e.
      const auto it = std::upper_bound(
          list.begin(), list.end(), e,
          [](std::size_t v, const Span& sp) { return v < sp.start; });
      std::size_t best = SIZE_MAX;
      if (it != list.end()) best = it->start - e;
      if (it != list.begin()) {
        const Span& prev = *(it - 1);
        best = std::min(best, prev.end >= s ? std::size_t{0} : s - prev.end);
      }

      for (std::size_t w = 0; w < nfinite; ++w) {
        if (best <= windows_.sizes[w] / 2) {
          ++block.cell(d, w, c);
          any_[slot * nwin + w] = true;
        }
      }
      if (windows_.include_document) {
        ++block.cell(d, nfinite, c);
        any_[slot * nwin + nfinite] = true;
      }
    }

    for (std::size_t w = 0; w < nwin; ++w) {
      ++block.total(d, w);
      for (std::size_t slot = 0; slot < 2; ++slot)
        if (!any_[slot * nwin + w]) ++block.none(d, w, slot);
    }
  }
}

DocCounts Scanner::scan(const Document& doc) {
  DocCounts out{doc.source, empty_block()};
  scan_into(doc.text, out.counts);
  return out;
}

DocCounts scan_document(const Document& doc, const CompiledMatcher& matcher,
                        const WindowConfig& windows) {
  Scanner scanner(matcher, windows);
  return scanner.scan(doc);
}

}  // namespace coaudit
