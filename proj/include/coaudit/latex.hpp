#pragma once

#include <string>
#include <string_view>

namespace coaudit {

/// Removes LaTeX command sequences from `text`.
///
/// A command is a backslash followed by one or more ASCII letters. Each
/// command is replaced by a single space. When a `{` immediately follows the
/// command name, that brace is absorbed into the replacement and its matching
/// `}` becomes a space as well, so the group's contents survive
/// (`\textbf{male}` -> ` male `). Escaped braces (`\{`, `\}`) never open or
/// close a group. Everything else, including `$` math delimiters, passes
/// through unchanged.
///
/// The result never contains a backslash followed by a letter, which makes the
/// function idempotent.
std::string strip_latex(std::string_view text);

}  // namespace coaudit
