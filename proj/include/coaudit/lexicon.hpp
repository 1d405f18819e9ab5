#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coaudit/tokenizer.hpp"

namespace coaudit {

enum class Dimension : std::uint8_t { disease = 0, race = 1, gender = 2 };

/// Demographic dimensions in the fixed order used by every count array.
inline constexpr std::array<Dimension, 2> kDemographicDimensions{
    Dimension::race, Dimension::gender};

std::string_view to_string(Dimension d);
/// Throws ConfigError naming `name` when it is not disease, race or gender.
Dimension parse_dimension(std::string_view name);
/// Position of a demographic dimension in kDemographicDimensions.
std::size_t demographic_slot(Dimension d);

enum class CaseMode : std::uint8_t { fold, exact };

struct Category {
  Dimension dimension = Dimension::disease;
  std::string name;
  std::vector<std::string> terms;

  bool operator==(const Category&) const = default;
};

/// Keyword dictionary grouped by dimension. `entries` is ordered disease
/// categories first, then race, then gender; file order is kept inside each
/// dimension.
struct Lexicon {
  std::vector<Category> entries;
  CaseMode case_mode = CaseMode::fold;
  bool match_pronouns = false;
  /// Disease slots declared in the file but not yet populated with terms.
  std::size_t unfilled_disease_slots = 0;
  /// Non-fatal issues found while loading (collapsed duplicates).
  std::vector<std::string> warnings;

  std::vector<std::string> names(Dimension d) const;
  std::size_t term_count() const;
  /// FNV-1a over a canonical serialization; equal lexicons hash equal.
  std::uint64_t hash() const;
};

/// Names reserved for report rows; a category may not use them.
inline constexpr std::string_view kAllScope = "ALL";
inline constexpr std::string_view kNoDemographic = "no_demographic";

/// Parses the JSON lexicon format: top-level keys `disease`, `race`,
/// `gender` (category -> list of terms) and optional `options`.
Lexicon parse_lexicon(std::string_view json_text,
                      std::string_view origin = "<memory>");
Lexicon load_lexicon(const std::filesystem::path& path);
/// The lexicon shipped with the library (data/default_lexicon.json).
Lexicon default_lexicon();

/// Category names per dimension, in count-array order. Two runs can only be
/// merged when their layouts agree.
struct LexiconLayout {
  std::vector<std::string> diseases;
  std::vector<std::string> races;
  std::vector<std::string> genders;

  const std::vector<std::string>& of(Dimension d) const;
  /// Race categories followed by gender categories.
  std::size_t demographic_count() const { return races.size() + genders.size(); }
  Dimension demographic_dimension(std::size_t c) const {
    return c < races.size() ? Dimension::race : Dimension::gender;
  }
  const std::string& demographic_name(std::size_t c) const {
    return c < races.size() ? races[c] : genders[c - races.size()];
  }
  /// Index into the demographic block for a named category, or npos.
  std::size_t demographic_index(Dimension d, std::string_view name) const;
  std::size_t disease_index(std::string_view name) const;

  bool operator==(const LexiconLayout&) const = default;
};

struct MatchHit {
  Dimension dimension = Dimension::disease;
  std::uint32_t category = 0;  ///< index within the hit's dimension
  std::uint32_t term = 0;      ///< index into CompiledMatcher::terms()
  std::size_t span_start = 0;  ///< first token, inclusive
  std::size_t span_end = 0;    ///< last token, inclusive

  bool operator==(const MatchHit&) const = default;
};

/// Reusable per-thread buffers for CompiledMatcher::find_matches.
struct MatchScratch {
  std::vector<std::uint32_t> ids;
  std::vector<std::size_t> next_free;
  struct Candidate {
    std::uint32_t category;
    std::uint32_t term;
    std::size_t end;
  };
  std::vector<Candidate> candidates;
};

/// Immutable token-level phrase matcher. Terms are tokenized with the same
/// rules as documents and matched as whole tokens; multi-word terms match
/// consecutive tokens. Within a category overlapping matches resolve
/// leftmost-longest; hits from different categories are all reported.
/// Safe to share across threads once constructed.
class CompiledMatcher {
 public:
  struct TermInfo {
    std::uint32_t category;  ///< global category index (see categories())
    std::string text;
    std::vector<std::string> tokens;  ///< normalized tokens
  };
  struct CategoryInfo {
    Dimension dimension;
    std::string name;
    std::uint32_t index_in_dimension;
  };

  explicit CompiledMatcher(const Lexicon& lexicon);

  /// Hits ordered by span_start, then dimension and category.
  std::vector<MatchHit> find_matches(std::span<const Token> tokens) const;
  void find_matches(std::span<const Token> tokens, std::vector<MatchHit>& out,
                    MatchScratch& scratch) const;

  const std::vector<CategoryInfo>& categories() const { return categories_; }
  const std::vector<TermInfo>& terms() const { return terms_; }
  const LexiconLayout& layout() const { return layout_; }
  std::uint64_t lexicon_hash() const { return lexicon_hash_; }
  CaseMode case_mode() const { return case_mode_; }

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  struct Node {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> children;  // sorted
    std::vector<std::uint32_t> terms;
  };
  struct Slot {
    std::uint64_t hash = 0;
    std::uint32_t id = kNone;
  };

  std::uint32_t intern(const std::string& token);
  std::uint32_t lookup(std::string_view token) const;
  std::uint32_t child(std::uint32_t node, std::uint32_t id) const;
  std::uint64_t token_hash(std::string_view token) const;

  CaseMode case_mode_;
  std::uint64_t lexicon_hash_;
  LexiconLayout layout_;
  std::vector<CategoryInfo> categories_;
  std::vector<TermInfo> terms_;
  std::vector<std::string> vocab_;
  std::vector<Slot> table_;
  std::size_t min_len_ = SIZE_MAX;
  std::size_t max_len_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> root_child_;  // by vocab id
};

/// Normalized token sequence for a term under `mode`.
std::vector<std::string> term_tokens(std::string_view term, CaseMode mode);

}  // namespace coaudit
