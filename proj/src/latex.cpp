#include "coaudit/latex.hpp"

#include <cstdint>
#include <vector>

namespace coaudit {
namespace {

constexpr bool is_alpha(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// match[i] holds the index of the `}` closing the `{` at i, or -1.
std::vector<std::int64_t> match_braces(std::string_view text) {
  std::vector<std::int64_t> match(text.size(), -1);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\\') {
      // `\{` and `\}` are literal; `\\` escapes the second backslash.
      if (i + 1 < text.size() && !is_alpha(text[i + 1])) ++i;
    } else if (c == '{') {
      open.push_back(i);
    } else if (c == '}' && !open.empty()) {
      match[open.back()] = static_cast<std::int64_t>(i);
      open.pop_back();
    }
  }
  return match;
}

}  // namespace

std::string strip_latex(std::string_view text) {
  if (text.find('\\') == std::string_view::npos) return std::string(text);

  const auto match = match_braces(text);
  std::vector<bool> drop(text.size(), false);
  std::string out;
  out.reserve(text.size());

  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\\' && i + 1 < text.size() && is_alpha(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < text.size() && is_alpha(text[j])) ++j;
      if (j < text.size() && text[j] == '{') {
        if (match[j] >= 0) drop[static_cast<std::size_t>(match[j])] = true;
        ++j;
      }
      out.push_back(' ');
      i = j;
      continue;
    }
    out.push_back(drop[i] ? ' ' : c);
    ++i;
  }
  return out;
}

}  // namespace coaudit
