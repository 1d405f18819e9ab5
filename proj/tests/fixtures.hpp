#pragma once

#include "coaudit/matrix.hpp"

namespace fixtures {

// Race and gender counts of co-occurring 100-word windows, scaled so that the
// shares print as 37.66 / 45.70 / 5.58 / 7.89 / 2.31 / 0.86 and 43.64 / 56.36.
inline constexpr std::uint64_t kRaceCounts[] = {3766, 4570, 558, 789, 231, 86};
inline constexpr std::uint64_t kGenderCounts[] = {4364, 5636};

/// Default-lexicon matrix holding the counts above for hypertension in one
/// source, identical at every window, with 100,000 windows in total. Each
/// co-occurring window holds exactly one category of each dimension.
inline coaudit::CooccurrenceMatrix reference_matrix() {
  using namespace coaudit;
  const CompiledMatcher matcher(default_lexicon());
  CooccurrenceMatrix m(make_run_meta(matcher, WindowConfig{}));
  CountBlock& b = m.block("fixture");
  for (std::size_t w = 0; w < b.windows; ++w) {
    b.total(0, w) = 100000;
    b.none(0, w, 0) = 100000 - 10000;
    b.none(0, w, 1) = 100000 - 10000;
    for (std::size_t c = 0; c < 6; ++c) b.cell(0, w, c) = kRaceCounts[c];
    for (std::size_t c = 0; c < 2; ++c) b.cell(0, w, 6 + c) = kGenderCounts[c];
  }
  return m;
}

}  // namespace fixtures
