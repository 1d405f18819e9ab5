#pragma once

// Brute-force reference for matching and counting. Written against the
// behavioural contract only: it shares no code with the tokenizer, the
// matcher or the scanner, and trades all speed for obviousness.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coaudit/counts.hpp"
#include "coaudit/lexicon.hpp"

namespace oracle {

inline bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
inline bool punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

inline std::string lower(std::string s) {
  for (auto& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  return s;
}

/// Whitespace words with edge punctuation removed.
inline std::vector<std::string> words(std::string_view text, bool fold) {
  std::vector<std::string> out;
  std::string cur;
  bool in_word = false;
  auto flush = [&] {
    std::size_t a = 0, b = cur.size();
    while (a < b && punct(cur[a])) ++a;
    while (b > a && punct(cur[b - 1])) --b;
    std::string w = cur.substr(a, b - a);
    out.push_back(fold ? lower(w) : w);
    cur.clear();
  };
  for (char c : text) {
    if (space(c)) {
      if (in_word) flush();
      in_word = false;
    } else {
      cur += c;
      in_word = true;
    }
  }
  if (in_word) flush();
  return out;
}

struct Hit {
  coaudit::Dimension dim;
  std::size_t category;  // index within dimension
  std::size_t start;
  std::size_t end;  // inclusive
};

inline std::vector<std::string> term_list(const coaudit::Lexicon& lex, const coaudit::Category& cat) {
  std::vector<std::string> terms = cat.terms;
  if (lex.match_pronouns && cat.dimension == coaudit::Dimension::gender) {
    if (lower(cat.name) == "female") terms.insert(terms.end(), {"she", "her", "hers", "herself"});
    if (lower(cat.name) == "male") terms.insert(terms.end(), {"he", "him", "his", "himself"});
  }
  return terms;
}

/// Every category scanned independently; at each position the longest term
/// starting there is taken and scanning resumes after it.
inline std::vector<Hit> matches(const coaudit::Lexicon& lex, const std::vector<std::string>& toks) {
  const bool fold = lex.case_mode == coaudit::CaseMode::fold;
  std::vector<Hit> out;
  std::size_t per_dim[3] = {0, 0, 0};
  for (const auto& cat : lex.entries) {
    const std::size_t index = per_dim[static_cast<int>(cat.dimension)]++;
    std::vector<std::vector<std::string>> phrases;
    for (const auto& t : term_list(lex, cat)) phrases.push_back(words(t, fold));
    std::size_t i = 0;
    while (i < toks.size()) {
      std::size_t best = 0;
      for (const auto& ph : phrases) {
        if (ph.empty() || i + ph.size() > toks.size()) continue;
        bool eq = true;
        for (std::size_t k = 0; k < ph.size() && eq; ++k) eq = toks[i + k] == ph[k];
        if (eq) best = std::max(best, ph.size());
      }
      if (best) {
        out.push_back({cat.dimension, index, i, i + best - 1});
        i += best;
      } else {
        ++i;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Hit& a, const Hit& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.category < b.category;
  });
  return out;
}

/// Smallest |i - j| over every token pair of the two spans.
inline std::size_t distance(const Hit& a, const Hit& b) {
  std::size_t best = SIZE_MAX;
  for (std::size_t i = a.start; i <= a.end; ++i)
    for (std::size_t j = b.start; j <= b.end; ++j)
      best = std::min(best, i > j ? i - j : j - i);
  return best;
}

/// Adds one document's counts to `block`, enumerating every
/// (disease hit, demographic hit) pair for every window.
inline void count(const coaudit::Lexicon& lex, const coaudit::WindowConfig& windows,
                  std::string_view text, coaudit::CountBlock& block) {
  const auto hits = matches(lex, words(text, lex.case_mode == coaudit::CaseMode::fold));
  const std::size_t races = lex.names(coaudit::Dimension::race).size();
  const std::size_t cats = block.categories;
  for (const auto& d : hits) {
    if (d.dim != coaudit::Dimension::disease) continue;
    for (std::size_t w = 0; w < windows.count(); ++w) {
      std::vector<int> seen(cats, 0);
      for (const auto& h : hits) {
        if (h.dim == coaudit::Dimension::disease) continue;
        const std::size_t c = h.dim == coaudit::Dimension::race ? h.category : races + h.category;
        const bool inside = windows.is_document(w) || distance(d, h) <= windows.sizes[w] / 2;
        if (inside) seen[c] = 1;
      }
      block.total(d.category, w) += 1;
      bool any_race = false, any_gender = false;
      for (std::size_t c = 0; c < cats; ++c) {
        block.cell(d.category, w, c) += seen[c];
        if (seen[c] && c < races) any_race = true;
        if (seen[c] && c >= races) any_gender = true;
      }
      if (!any_race) block.none(d.category, w, 0) += 1;
      if (!any_gender) block.none(d.category, w, 1) += 1;
    }
  }
}

inline coaudit::CountBlock empty_block(const coaudit::Lexicon& lex, const coaudit::WindowConfig& windows) {
  using coaudit::Dimension;
  return coaudit::CountBlock(lex.names(Dimension::disease).size(), windows.count(),
                             lex.names(Dimension::race).size() + lex.names(Dimension::gender).size());
}

}  // namespace oracle
