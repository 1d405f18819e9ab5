#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coaudit {

/// Context window widths in words. A window of size w admits demographic
/// terms up to w/2 words before or after the disease term. The optional
/// document window admits any term in the same document.
struct WindowConfig {
  std::vector<std::uint32_t> sizes{20, 100, 200, 500};
  bool include_document = true;

  /// Throws ConfigError unless sizes are strictly increasing, even and >= 2.
  void validate() const;
  std::size_t count() const { return sizes.size() + (include_document ? 1 : 0); }
  bool is_document(std::size_t w) const { return w == sizes.size(); }
  /// "20", "100", ... or "document".
  std::string label(std::size_t w) const;
  /// Index of a window label, or npos.
  std::size_t index_of(const std::string& label) const;

  bool operator==(const WindowConfig&) const = default;
};

/// Dense counts for one source, indexed by lexicon order.
///   cells   [disease][window][category]  windows co-occurring with category
///   totals  [disease][window]            disease windows (= disease hits)
///   no_demo [disease][window][dimension] windows with no hit of dimension
/// Demographic categories are race categories followed by gender
/// categories; the dimension slot is 0 for race, 1 for gender.
struct CountBlock {
  std::size_t diseases = 0;
  std::size_t windows = 0;
  std::size_t categories = 0;
  std::vector<std::uint64_t> cells;
  std::vector<std::uint64_t> totals;
  std::vector<std::uint64_t> no_demo;

  CountBlock() = default;
  CountBlock(std::size_t d, std::size_t w, std::size_t c)
      : diseases(d), windows(w), categories(c),
        cells(d * w * c, 0), totals(d * w, 0), no_demo(d * w * 2, 0) {}

  std::uint64_t& cell(std::size_t d, std::size_t w, std::size_t c) {
    return cells[(d * windows + w) * categories + c];
  }
  std::uint64_t cell(std::size_t d, std::size_t w, std::size_t c) const {
    return cells[(d * windows + w) * categories + c];
  }
  std::uint64_t& total(std::size_t d, std::size_t w) { return totals[d * windows + w]; }
  std::uint64_t total(std::size_t d, std::size_t w) const { return totals[d * windows + w]; }
  std::uint64_t& none(std::size_t d, std::size_t w, std::size_t slot) {
    return no_demo[(d * windows + w) * 2 + slot];
  }
  std::uint64_t none(std::size_t d, std::size_t w, std::size_t slot) const {
    return no_demo[(d * windows + w) * 2 + slot];
  }

  bool same_shape(const CountBlock& o) const {
    return diseases == o.diseases && windows == o.windows && categories == o.categories;
  }
  /// Pointwise sum; shapes must agree.
  CountBlock& operator+=(const CountBlock& o);
  bool operator==(const CountBlock&) const = default;
};

}  // namespace coaudit
