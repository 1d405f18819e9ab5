#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coaudit::csv {

/// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);
/// Joins already-formatted fields with commas (escaping each).
std::string row(const std::vector<std::string>& fields);
/// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> split(std::string_view line);

/// Shortest decimal text that round-trips to `v`; locale independent.
std::string full(double v);
/// Fixed two-decimal text, locale independent.
std::string fixed2(double v);
/// Empty string for an absent value.
std::string full(const std::optional<double>& v);

/// Locale-independent double parse of the whole field; nullopt on failure.
std::optional<double> parse_double(std::string_view s);

}  // namespace coaudit::csv
