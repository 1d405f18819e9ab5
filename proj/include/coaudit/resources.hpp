#pragma once

#include <string_view>

namespace coaudit::resources {

/// Contents of data/default_lexicon.json, embedded at build time.
std::string_view default_lexicon_json();
/// Contents of data/census_2020.baseline, embedded at build time.
std::string_view census_baseline_text();

}  // namespace coaudit::resources
