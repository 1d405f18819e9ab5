#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coaudit/matrix.hpp"

namespace coaudit {

/// micro pools counts across sources; macro averages per-source percents
/// over the sources that have at least one window.
enum class Aggregation { micro, macro };

std::string_view to_string(Aggregation a);
Aggregation parse_aggregation(std::string_view s);

struct Percent {
  double value = 0.0;
  bool no_windows = false;  ///< no source in scope had a window
};

/// 100 * windows with the category / disease windows. `category` may be
/// kNoDemographic for windows lacking any term of `dim`. With `source` set,
/// only that source is considered (micro and macro then agree).
Percent representation_pct(const CooccurrenceMatrix& m, std::string_view disease,
                           std::string_view window, Dimension dim,
                           std::string_view category, Aggregation agg,
                           const std::optional<std::string>& source = std::nullopt);

/// Percent of disease windows with at least one term of `dim`.
Percent any_demographic_pct(const CooccurrenceMatrix& m, std::string_view disease,
                            std::string_view window, Dimension dim,
                            Aggregation agg,
                            const std::optional<std::string>& source = std::nullopt);

/// Restricts share computation to one disease and/or one source.
struct Scope {
  std::optional<std::string> disease;
  std::optional<std::string> source;
};

struct ShareRow {
  Dimension dimension = Dimension::race;
  std::string category;
  std::uint64_t count = 0;
  std::optional<double> share;  ///< absent when the dimension has no counts
};

/// Each category's percent of the co-occurring windows of its dimension.
struct ShareTable {
  std::string window;
  std::string disease{kAllScope};
  std::string source{kAllScope};
  std::vector<ShareRow> rows;

  std::optional<double> share(Dimension dim, std::string_view category) const;
  /// Sum of present shares for a dimension.
  double sum(Dimension dim) const;
};

ShareTable demographic_shares(const CooccurrenceMatrix& m, std::string_view window,
                              const Scope& scope = {});

/// Keeps only `keep` categories of `dim` and renormalizes their shares to
/// 100. Other dimensions pass through.
ShareTable renormalize(const ShareTable& t, Dimension dim,
                       const std::vector<std::string>& keep);

/// Race categories retained by the four-race comparison.
inline const std::vector<std::string> kFourRaces{"White", "Black", "Asian", "Hispanic"};

struct WindowPoint {
  std::string window;
  Percent percent;
};

/// Representation percent at every configured window, in window order.
std::vector<WindowPoint> window_profile(const CooccurrenceMatrix& m,
                                        std::string_view disease, Dimension dim,
                                        std::string_view category,
                                        Aggregation agg = Aggregation::macro);

struct BaselineRow {
  Dimension dimension = Dimension::race;
  std::string category;
  std::optional<std::string> disease;  ///< absent: applies to every disease
  double percent = 0.0;
};

/// External reference proportions (census, prevalence, model output).
struct BaselineTable {
  std::string name;
  std::string provenance;
  std::vector<BaselineRow> rows;

  /// Disease-specific row first, then a disease-independent one.
  std::optional<double> lookup(std::string_view disease, Dimension dim,
                               std::string_view category) const;
};

/// Baseline files are CSV with header `name,dimension,category,disease,percent`
/// and `#` comment lines (kept as provenance). Rows whose name column differs
/// from `name` are ignored; a file whose rows all carry another name is an
/// error. Negative percents are fatal.
BaselineTable parse_baseline(std::string_view text, std::string_view name,
                             std::string_view origin = "<memory>");
BaselineTable load_baseline(const std::filesystem::path& path, std::string_view name);
/// Name taken from the first data row, or the file stem for a file without rows.
BaselineTable load_baseline(const std::filesystem::path& path);
/// The shipped 2020 US Census table (data/census_2020.baseline).
BaselineTable census_2020_baseline();

struct ComparisonRow {
  std::string baseline;
  std::string disease;
  Dimension dimension = Dimension::race;
  std::string category;
  std::optional<double> corpus;
  std::optional<double> reference;
  std::optional<double> difference;  ///< corpus - reference, percentage points
  std::optional<double> ratio;       ///< corpus / reference; absent when reference is 0
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;

  const ComparisonRow* find(std::string_view disease, Dimension dim,
                            std::string_view category) const;
};

/// Joins corpus shares (one table per disease, plus the ALL scope if given)
/// with a baseline. With `four_race`, race shares are first renormalized
/// over kFourRaces and the other race categories dropped.
ComparisonTable compare_to_baseline(const std::vector<ShareTable>& shares,
                                    const BaselineTable& baseline, bool four_race);

}  // namespace coaudit
