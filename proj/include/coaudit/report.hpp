#pragma once

#include <string>
#include <vector>

#include "coaudit/matrix.hpp"
#include "coaudit/stats.hpp"

namespace coaudit::report {

/// source,disease,window,dimension,category,count
std::string counts_csv(const CooccurrenceMatrix& m);
/// source,disease,window,total_windows,no_gender,no_race
std::string totals_csv(const CooccurrenceMatrix& m);

/// Shares at `window` for the ALL scope, each disease, and each source.
std::vector<ShareTable> share_tables(const CooccurrenceMatrix& m, const std::string& window);
/// window,disease,source,dimension,category,count,share
std::string shares_csv(const std::vector<ShareTable>& tables);
/// Space-separated two-decimal shares of one dimension, lexicon order;
/// "-" for absent values.
std::string share_values(const ShareTable& t, Dimension dim);
/// Overall shares in the census-table layout, with optional baseline rows.
std::string shares_text(const ShareTable& overall, const std::vector<BaselineTable>& baselines,
                        const LexiconLayout& layout);

/// aggregation,source,disease,window,dimension,category,count,total_windows,percent
/// One ALL row per (disease, category) using `agg`, then one row per source.
/// Category no_demographic carries windows lacking the dimension.
std::string representation_csv(const CooccurrenceMatrix& m, const std::string& window,
                               Aggregation agg);
std::string representation_text(const CooccurrenceMatrix& m, const std::string& window,
                                Aggregation agg);
/// window,dimension,co_occurring_windows,total_windows,percent,all_windows_total
/// Pooled over diseases and sources; all_windows_total sums disease windows
/// across every window size.
std::string summary_csv(const CooccurrenceMatrix& m);

/// aggregation,disease,dimension,category,window,percent
std::string window_profile_csv(const CooccurrenceMatrix& m, Aggregation agg);

/// baseline,disease,dimension,category,corpus_share,baseline_share,difference,ratio
std::string compare_csv(const std::vector<ComparisonTable>& tables);
std::string compare_text(const std::vector<ComparisonTable>& tables);

}  // namespace coaudit::report
