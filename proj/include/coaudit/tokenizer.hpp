#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace coaudit {

/// One whitespace-delimited word. `text` is the word with leading and
/// trailing ASCII punctuation trimmed (possibly empty, e.g. for "--"); it is
/// a view into the tokenized string. The token's index in the returned vector
/// is its word position.
struct Token {
  std::string_view text;
  std::size_t offset = 0;  ///< byte offset of the untrimmed word
};

constexpr bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

constexpr bool is_punct(char c) noexcept {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

constexpr char fold_ascii(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

/// Splits on ASCII whitespace and trims edge punctuation from each word.
/// Appends into `out` (cleared first) so callers can reuse the buffer.
void tokenize(std::string_view text, std::vector<Token>& out);

std::vector<Token> tokenize(std::string_view text);

/// Lower-cases ASCII letters; other bytes are kept.
std::string fold_case(std::string_view s);

}  // namespace coaudit
