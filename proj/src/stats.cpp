#include "coaudit/stats.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "coaudit/csv.hpp"
#include "coaudit/error.hpp"
#include "coaudit/resources.hpp"

namespace coaudit {

std::string_view to_string(Aggregation a) {
  return a == Aggregation::micro ? "micro" : "macro";
}

Aggregation parse_aggregation(std::string_view s) {
  if (s == "micro") return Aggregation::micro;
  if (s == "macro") return Aggregation::macro;
  throw ConfigError("unknown aggregation '" + std::string(s) +
                    "' (expected micro or macro)");
}

namespace {

// Windows numerator for one source block.
using NumeratorFn = std::uint64_t (*)(const CountBlock&, std::size_t, std::size_t,
                                      std::size_t);

Percent aggregate_pct(const CooccurrenceMatrix& m, std::size_t d, std::size_t w,
                      std::size_t key, NumeratorFn numerator, Aggregation agg,
                      const std::optional<std::string>& source) {
  if (source && !m.find(*source) && !m.empty()) {
    // Unknown source names are an error; a known source with no block is not
    // possible because blocks are created on first document.
    throw ConfigError("unknown source '" + *source + "'");
  }
  std::uint64_t num = 0;
  std::uint64_t den = 0;
  double pct_sum = 0.0;
  std::size_t contributing = 0;
  for (const auto& [name, block] : m.sources()) {
    if (source && name != *source) continue;
    const std::uint64_t t = block.total(d, w);
    const std::uint64_t n = numerator(block, d, w, key);
    num += n;
    den += t;
    if (t > 0) {
      pct_sum += 100.0 * static_cast<double>(n) / static_cast<double>(t);
      ++contributing;
    }
  }
  if (den == 0) return {0.0, true};
  if (agg == Aggregation::micro)
    return {100.0 * static_cast<double>(num) / static_cast<double>(den), false};
  return {pct_sum / static_cast<double>(contributing), false};
}

std::uint64_t cell_num(const CountBlock& b, std::size_t d, std::size_t w, std::size_t c) {
  return b.cell(d, w, c);
}
std::uint64_t none_num(const CountBlock& b, std::size_t d, std::size_t w, std::size_t s) {
  return b.none(d, w, s);
}
std::uint64_t any_num(const CountBlock& b, std::size_t d, std::size_t w, std::size_t s) {
  return b.total(d, w) - b.none(d, w, s);
}

}  // namespace

Percent representation_pct(const CooccurrenceMatrix& m, std::string_view disease,
                           std::string_view window, Dimension dim,
                           std::string_view category, Aggregation agg,
                           const std::optional<std::string>& source) {
  const auto d = m.disease_index(disease);
  const auto w = m.window_index(window);
  if (category == kNoDemographic)
    return aggregate_pct(m, d, w, demographic_slot(dim), none_num, agg, source);
  return aggregate_pct(m, d, w, m.category_index(dim, category), cell_num, agg, source);
}

Percent any_demographic_pct(const CooccurrenceMatrix& m, std::string_view disease,
                            std::string_view window, Dimension dim, Aggregation agg,
                            const std::optional<std::string>& source) {
  const auto d = m.disease_index(disease);
  const auto w = m.window_index(window);
  return aggregate_pct(m, d, w, demographic_slot(dim), any_num, agg, source);
}

// --- shares -----------------------------------------------------------------

std::optional<double> ShareTable::share(Dimension dim, std::string_view category) const {
  for (const auto& r : rows)
    if (r.dimension == dim && r.category == category) return r.share;
  return std::nullopt;
}

double ShareTable::sum(Dimension dim) const {
  double s = 0.0;
  for (const auto& r : rows)
    if (r.dimension == dim && r.share) s += *r.share;
  return s;
}

namespace {

void fill_shares(ShareTable& t) {
  for (Dimension dim : kDemographicDimensions) {
    std::uint64_t sum = 0;
    for (const auto& r : t.rows)
      if (r.dimension == dim) sum += r.count;
    for (auto& r : t.rows) {
      if (r.dimension != dim) continue;
      if (sum == 0) r.share.reset();
      else r.share = 100.0 * static_cast<double>(r.count) / static_cast<double>(sum);
    }
  }
}

}  // namespace

ShareTable demographic_shares(const CooccurrenceMatrix& m, std::string_view window,
                              const Scope& scope) {
  const auto w = m.window_index(window);
  const auto& layout = m.meta().layout;
  std::optional<std::size_t> only_disease;
  if (scope.disease) only_disease = m.disease_index(*scope.disease);
  if (scope.source && !m.find(*scope.source) && !m.empty())
    throw ConfigError("unknown source '" + *scope.source + "'");

  ShareTable t;
  t.window = std::string(window);
  if (scope.disease) t.disease = *scope.disease;
  if (scope.source) t.source = *scope.source;
  for (std::size_t c = 0; c < layout.demographic_count(); ++c)
    t.rows.push_back({layout.demographic_dimension(c), layout.demographic_name(c), 0, {}});

  for (const auto& [name, block] : m.sources()) {
    if (scope.source && name != *scope.source) continue;
    for (std::size_t d = 0; d < block.diseases; ++d) {
      if (only_disease && d != *only_disease) continue;
      for (std::size_t c = 0; c < block.categories; ++c) t.rows[c].count += block.cell(d, w, c);
    }
  }
  fill_shares(t);
  return t;
}

ShareTable renormalize(const ShareTable& t, Dimension dim,
                       const std::vector<std::string>& keep) {
  ShareTable out = t;
  out.rows.clear();
  for (const auto& r : t.rows) {
    if (r.dimension == dim &&
        std::find(keep.begin(), keep.end(), r.category) == keep.end())
      continue;
    out.rows.push_back(r);
  }
  fill_shares(out);
  return out;
}

std::vector<WindowPoint> window_profile(const CooccurrenceMatrix& m,
                                        std::string_view disease, Dimension dim,
                                        std::string_view category, Aggregation agg) {
  const auto& windows = m.meta().windows;
  std::vector<WindowPoint> out;
  for (std::size_t w = 0; w < windows.count(); ++w) {
    const auto label = windows.label(w);
    out.push_back({label, representation_pct(m, disease, label, dim, category, agg)});
  }
  return out;
}

// --- baselines --------------------------------------------------------------

std::optional<double> BaselineTable::lookup(std::string_view disease, Dimension dim,
                                            std::string_view category) const {
  std::optional<double> general;
  for (const auto& r : rows) {
    if (r.dimension != dim || r.category != category) continue;
    if (r.disease && *r.disease == disease) return r.percent;
    if (!r.disease) general = r.percent;
  }
  return general;
}

BaselineTable parse_baseline(std::string_view text, std::string_view name,
                             std::string_view origin) {
  const std::string where(origin);
  BaselineTable table;
  table.name = std::string(name);
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  std::vector<std::string> other_names;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      auto note = line.substr(first + 1);
      if (!note.empty() && note.front() == ' ') note.erase(0, 1);
      if (!table.provenance.empty()) table.provenance += '\n';
      table.provenance += note;
      continue;
    }
    const auto fields = csv::split(line);
    if (!header) {
      if (fields != std::vector<std::string>{"name", "dimension", "category", "disease", "percent"})
        throw ConfigError(where + ": expected header name,dimension,category,disease,percent");
      header = true;
      continue;
    }
    const std::string at = where + ":" + std::to_string(lineno);
    if (fields.size() != 5) throw ConfigError(at + ": expected 5 fields");
    if (fields[0] != name) {
      if (std::find(other_names.begin(), other_names.end(), fields[0]) == other_names.end())
        other_names.push_back(fields[0]);
      continue;
    }
    BaselineRow row;
    try {
      row.dimension = parse_dimension(fields[1]);
    } catch (const ConfigError& e) {
      throw ConfigError(at + ": " + e.what());
    }
    if (row.dimension == Dimension::disease)
      throw ConfigError(at + ": baseline rows must be race or gender");
    row.category = fields[2];
    if (!fields[3].empty()) row.disease = fields[3];
    const auto pct = csv::parse_double(fields[4]);
    if (!pct) throw ConfigError(at + ": percent '" + fields[4] + "' is not a number");
    if (*pct < 0) throw ConfigError(at + ": negative percent " + fields[4]);
    row.percent = *pct;
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty() && !other_names.empty())
    throw ConfigError(where + ": no rows named '" + std::string(name) +
                      "' (file holds '" + other_names.front() + "')");
  return table;
}

BaselineTable load_baseline(const std::filesystem::path& path, std::string_view name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read baseline file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_baseline(ss.str(), name, path.string());
}

BaselineTable load_baseline(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read baseline file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  std::istringstream lines(text);
  std::string line;
  bool header = false;
  std::string name = path.stem().string();
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    name = csv::split(line).front();
    break;
  }
  return parse_baseline(text, name, path.string());
}

BaselineTable census_2020_baseline() {
  return parse_baseline(resources::census_baseline_text(), "census", "census_2020.baseline");
}

// --- comparison -------------------------------------------------------------

const ComparisonRow* ComparisonTable::find(std::string_view disease, Dimension dim,
                                           std::string_view category) const {
  for (const auto& r : rows)
    if (r.disease == disease && r.dimension == dim && r.category == category) return &r;
  return nullptr;
}

ComparisonTable compare_to_baseline(const std::vector<ShareTable>& shares,
                                    const BaselineTable& baseline, bool four_race) {
  ComparisonTable out;
  for (const auto& raw : shares) {
    const ShareTable t = four_race ? renormalize(raw, Dimension::race, kFourRaces) : raw;
    for (const auto& r : t.rows) {
      ComparisonRow row;
      row.baseline = baseline.name;
      row.disease = t.disease;
      row.dimension = r.dimension;
      row.category = r.category;
      row.corpus = r.share;
      row.reference = baseline.lookup(t.disease, r.dimension, r.category);
      if (row.corpus && row.reference) {
        row.difference = *row.corpus - *row.reference;
        if (*row.reference > 0) row.ratio = *row.corpus / *row.reference;
      }
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace coaudit
