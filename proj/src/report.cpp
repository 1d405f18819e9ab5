#include "coaudit/report.hpp"

#include <algorithm>

#include "coaudit/csv.hpp"

namespace coaudit::report {

namespace {

std::string u64(std::uint64_t v) { return std::to_string(v); }

std::string pad(const std::string& s, std::size_t width, bool right = false) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return right ? fill + s : s + fill;
}

}  // namespace

std::string counts_csv(const CooccurrenceMatrix& m) {
  const auto& meta = m.meta();
  const auto& layout = meta.layout;
  std::string out = "source,disease,window,dimension,category,count\n";
  for (const auto& [source, b] : m.sources()) {
    for (std::size_t d = 0; d < b.diseases; ++d)
      for (std::size_t w = 0; w < b.windows; ++w)
        for (std::size_t c = 0; c < b.categories; ++c) {
          out += csv::row({source, layout.diseases[d], meta.windows.label(w),
                           std::string(to_string(layout.demographic_dimension(c))),
                           layout.demographic_name(c), u64(b.cell(d, w, c))});
          out += '\n';
        }
  }
  return out;
}

std::string totals_csv(const CooccurrenceMatrix& m) {
  const auto& meta = m.meta();
  std::string out = "source,disease,window,total_windows,no_gender,no_race\n";
  const auto race = demographic_slot(Dimension::race);
  const auto gender = demographic_slot(Dimension::gender);
  for (const auto& [source, b] : m.sources()) {
    for (std::size_t d = 0; d < b.diseases; ++d)
      for (std::size_t w = 0; w < b.windows; ++w) {
        out += csv::row({source, meta.layout.diseases[d], meta.windows.label(w),
                         u64(b.total(d, w)), u64(b.none(d, w, gender)),
                         u64(b.none(d, w, race))});
        out += '\n';
      }
  }
  return out;
}

std::vector<ShareTable> share_tables(const CooccurrenceMatrix& m, const std::string& window) {
  std::vector<ShareTable> out;
  out.push_back(demographic_shares(m, window));
  for (const auto& d : m.meta().layout.diseases)
    out.push_back(demographic_shares(m, window, Scope{d, std::nullopt}));
  for (const auto& [source, block] : m.sources())
    out.push_back(demographic_shares(m, window, Scope{std::nullopt, source}));
  return out;
}

std::string shares_csv(const std::vector<ShareTable>& tables) {
  std::string out = "window,disease,source,dimension,category,count,share\n";
  for (const auto& t : tables)
    for (const auto& r : t.rows) {
      out += csv::row({t.window, t.disease, t.source, std::string(to_string(r.dimension)),
                       r.category, u64(r.count), csv::full(r.share)});
      out += '\n';
    }
  return out;
}

std::string share_values(const ShareTable& t, Dimension dim) {
  std::string out;
  for (const auto& r : t.rows) {
    if (r.dimension != dim) continue;
    if (!out.empty()) out += ' ';
    out += r.share ? csv::fixed2(*r.share) : std::string("-");
  }
  return out;
}

std::string shares_text(const ShareTable& overall, const std::vector<BaselineTable>& baselines,
                        const LexiconLayout& layout) {
  constexpr std::size_t kLabel = 44;
  std::vector<std::pair<Dimension, std::string>> columns;
  for (const auto& r : layout.races) columns.emplace_back(Dimension::race, r);
  for (const auto& g : layout.genders) columns.emplace_back(Dimension::gender, g);
  std::vector<std::size_t> widths;
  for (const auto& [dim, name] : columns) widths.push_back(std::max<std::size_t>(name.size(), 7));

  std::string out = "Share of co-occurring windows by category (" + overall.window +
                    " word window; disease " + overall.disease + ", source " +
                    overall.source + ")\n";
  out += pad("", kLabel);
  for (std::size_t i = 0; i < columns.size(); ++i) out += "  " + pad(columns[i].second, widths[i], true);
  out += '\n';

  auto line = [&](const std::string& label, auto value_of) {
    std::string row = pad(label, kLabel);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const std::optional<double> v = value_of(columns[i].first, columns[i].second);
      row += "  " + pad(v ? csv::fixed2(*v) : std::string("-"), widths[i], true);
    }
    return row + '\n';
  };
  out += line("Corpus co-occurrence share (%)",
              [&](Dimension d, const std::string& c) { return overall.share(d, c); });
  for (const auto& b : baselines)
    out += line(b.name + " (%)", [&](Dimension d, const std::string& c) {
      return b.lookup(overall.disease, d, c);
    });
  return out;
}

std::string representation_csv(const CooccurrenceMatrix& m, const std::string& window,
                               Aggregation agg) {
  const auto& layout = m.meta().layout;
  const auto w = m.window_index(window);
  std::string out = "aggregation,source,disease,window,dimension,category,count,total_windows,percent\n";
  const std::string agg_name(to_string(agg));

  auto emit = [&](const std::string& source, std::size_t d, auto pooled) {
    const auto& disease = layout.diseases[d];
    const std::optional<std::string> scope =
        source == kAllScope ? std::nullopt : std::optional<std::string>(source);
    std::uint64_t total = 0;
    for (const auto& [name, b] : m.sources())
      if (!scope || name == *scope) total += b.total(d, w);
    for (std::size_t c = 0; c < layout.demographic_count(); ++c) {
      const Dimension dim = layout.demographic_dimension(c);
      const auto& cat = layout.demographic_name(c);
      const Percent p = representation_pct(m, disease, window, dim, cat, agg, scope);
      out += csv::row({agg_name, source, disease, window, std::string(to_string(dim)), cat,
                       u64(pooled(scope, d, c, false)), u64(total), csv::full(p.value)});
      out += '\n';
    }
    for (Dimension dim : kDemographicDimensions) {
      const Percent p = representation_pct(m, disease, window, dim, kNoDemographic, agg, scope);
      out += csv::row({agg_name, source, disease, window, std::string(to_string(dim)),
                       std::string(kNoDemographic),
                       u64(pooled(scope, d, demographic_slot(dim), true)), u64(total),
                       csv::full(p.value)});
      out += '\n';
    }
  };
  auto pooled = [&](const std::optional<std::string>& scope, std::size_t d, std::size_t key,
                    bool none) {
    std::uint64_t n = 0;
    for (const auto& [name, b] : m.sources())
      if (!scope || name == *scope) n += none ? b.none(d, w, key) : b.cell(d, w, key);
    return n;
  };

  for (std::size_t d = 0; d < layout.diseases.size(); ++d) emit(std::string(kAllScope), d, pooled);
  for (const auto& [source, b] : m.sources())
    for (std::size_t d = 0; d < layout.diseases.size(); ++d) emit(source, d, pooled);
  return out;
}

std::string representation_text(const CooccurrenceMatrix& m, const std::string& window,
                                Aggregation agg) {
  const auto& layout = m.meta().layout;
  std::string out;
  for (Dimension dim : kDemographicDimensions) {
    const auto& cats = layout.of(dim);
    out += "Representation % by " + std::string(to_string(dim)) + " (" + window +
           " word window, " + std::string(to_string(agg)) + ")\n";
    std::string header = pad("disease", 24);
    for (const auto& c : cats) header += "  " + pad(c, std::max<std::size_t>(c.size(), 7), true);
    header += "  " + pad("none", 7, true) + "  " + pad("windows", 12, true) + '\n';
    out += header;
    for (const auto& disease : layout.diseases) {
      std::string row = pad(disease, 24);
      std::uint64_t total = 0;
      for (const auto& [name, b] : m.sources())
        total += b.total(layout.disease_index(disease), m.window_index(window));
      for (const auto& c : cats) {
        const Percent p = representation_pct(m, disease, window, dim, c, agg);
        row += "  " + pad(csv::fixed2(p.value), std::max<std::size_t>(c.size(), 7), true);
      }
      const Percent none = representation_pct(m, disease, window, dim, kNoDemographic, agg);
      row += "  " + pad(total ? csv::fixed2(none.value) : std::string("-"), 7, true);
      row += "  " + pad(u64(total), 12, true) + '\n';
      out += row;
    }
    out += '\n';
  }
  return out;
}

std::string summary_csv(const CooccurrenceMatrix& m) {
  const auto& meta = m.meta();
  std::string out = "window,dimension,co_occurring_windows,total_windows,percent,all_windows_total\n";
  std::uint64_t all_windows = 0;
  for (const auto& [name, b] : m.sources())
    for (auto t : b.totals) all_windows += t;
  for (std::size_t w = 0; w < meta.windows.count(); ++w)
    for (Dimension dim : kDemographicDimensions) {
      const auto slot = demographic_slot(dim);
      std::uint64_t total = 0;
      std::uint64_t with = 0;
      for (const auto& [name, b] : m.sources())
        for (std::size_t d = 0; d < b.diseases; ++d) {
          total += b.total(d, w);
          with += b.total(d, w) - b.none(d, w, slot);
        }
      const double pct = total ? 100.0 * static_cast<double>(with) / static_cast<double>(total) : 0.0;
      out += csv::row({meta.windows.label(w), std::string(to_string(dim)), u64(with), u64(total),
                       csv::full(pct), u64(all_windows)});
      out += '\n';
    }
  return out;
}

std::string window_profile_csv(const CooccurrenceMatrix& m, Aggregation agg) {
  const auto& layout = m.meta().layout;
  std::string out = "aggregation,disease,dimension,category,window,percent\n";
  const std::string agg_name(to_string(agg));
  for (const auto& disease : layout.diseases)
    for (Dimension dim : kDemographicDimensions) {
      auto cats = layout.of(dim);
      cats.push_back(std::string(kNoDemographic));
      for (const auto& c : cats)
        for (const auto& pt : window_profile(m, disease, dim, c, agg)) {
          out += csv::row({agg_name, disease, std::string(to_string(dim)), c, pt.window,
                           csv::full(pt.percent.value)});
          out += '\n';
        }
    }
  return out;
}

std::string compare_csv(const std::vector<ComparisonTable>& tables) {
  std::string out = "baseline,disease,dimension,category,corpus_share,baseline_share,difference,ratio\n";
  for (const auto& t : tables)
    for (const auto& r : t.rows) {
      out += csv::row({r.baseline, r.disease, std::string(to_string(r.dimension)), r.category,
                       csv::full(r.corpus), csv::full(r.reference), csv::full(r.difference),
                       csv::full(r.ratio)});
      out += '\n';
    }
  return out;
}

std::string compare_text(const std::vector<ComparisonTable>& tables) {
  std::string out = pad("baseline", 12) + pad("disease", 24) + pad("category", 20) +
                    pad("corpus", 9, true) + pad("baseline", 10, true) +
                    pad("diff", 9, true) + pad("ratio", 8, true) + '\n';
  auto fmt = [](const std::optional<double>& v) { return v ? csv::fixed2(*v) : std::string("-"); };
  for (const auto& t : tables)
    for (const auto& r : t.rows) {
      out += pad(r.baseline, 12) + pad(r.disease, 24) +
             pad(std::string(to_string(r.dimension)) + ":" + r.category, 20) +
             pad(fmt(r.corpus), 9, true) + pad(fmt(r.reference), 10, true) +
             pad(fmt(r.difference), 9, true) + pad(fmt(r.ratio), 8, true) + '\n';
    }
  return out;
}

}  // namespace coaudit::report
