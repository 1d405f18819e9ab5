#include "coaudit/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coaudit/error.hpp"
#include "coaudit/hash.hpp"
#include "coaudit/report.hpp"
#include "coaudit/rng.hpp"
#include "coaudit/scanner.hpp"

namespace coaudit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string window_label(const json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  return j.get<std::string>();
}

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

SynthSpec parse_synth_spec(std::string_view json_text, const fs::path& base_dir) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("synth spec is not a JSON object");
  SynthSpec spec;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "lexicon") {
        if (!value.is_null()) spec.lexicon_path = resolve(base_dir, value.get<std::string>());
      } else if (key == "windows") {
        if (value.is_array()) {
          spec.windows.sizes = value.get<std::vector<std::uint32_t>>();
        } else {
          if (value.contains("sizes")) spec.windows.sizes = value.at("sizes").get<std::vector<std::uint32_t>>();
          if (value.contains("include_document"))
            spec.windows.include_document = value.at("include_document").get<bool>();
        }
      } else if (key == "docs_per_file") {
        spec.docs_per_file = value.get<std::size_t>();
      } else if (key == "margin") {
        spec.margin = value.get<std::size_t>();
      } else if (key == "decorate") {
        spec.decorate = value.get<bool>();
      } else if (key == "sources") {
        for (const auto& s : value) {
          SynthSource src;
          src.label = s.at("label").get<std::string>();
          for (const auto& [disease, n] : s.at("windows_per_disease").items())
            src.windows_per_disease[disease] = n.get<std::uint64_t>();
          if (s.contains("rates")) {
            for (const auto& r : s.at("rates")) {
              RateCell cell;
              cell.disease = r.at("disease").get<std::string>();
              cell.dimension = parse_dimension(r.at("dimension").get<std::string>());
              cell.category = r.at("category").get<std::string>();
              cell.window = window_label(r.at("window"));
              cell.p = r.at("p").get<double>();
              src.rates.push_back(std::move(cell));
            }
          }
          spec.sources.push_back(std::move(src));
        }
      } else {
        throw ConfigError("unknown synth spec key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("synth spec: ") + e.what());
  }
  return spec;
}

SynthSpec load_synth_spec(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read synth spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_synth_spec(ss.str(), path.parent_path());
}

namespace {

constexpr std::size_t kNoBand = SIZE_MAX;

const std::vector<std::string> kFiller{"ka", "lo", "mi", "nu", "pe", "ro", "su", "ti",
                                       "va", "zo", "qi", "xu", "dey", "fon", "gim", "jor"};

/// Cumulative planted rate per (disease, category, window).
struct RatePlan {
  std::size_t windows = 0;
  std::size_t categories = 0;
  std::vector<double> rate;  // [disease][category][window]

  double& at(std::size_t d, std::size_t c, std::size_t w) {
    return rate[(d * categories + c) * windows + w];
  }
};

RatePlan build_plan(const SynthSource& src, const LexiconLayout& layout,
                    const WindowConfig& windows) {
  RatePlan plan;
  plan.windows = windows.count();
  plan.categories = layout.demographic_count();
  plan.rate.assign(layout.diseases.size() * plan.categories * plan.windows, -1.0);

  for (const auto& cell : src.rates) {
    if (!(cell.p >= 0.0 && cell.p <= 1.0))
      throw ConfigError("rate " + std::to_string(cell.p) + " for " + cell.disease + " x " +
                        cell.category + " is outside [0, 1]");
    const auto d = layout.disease_index(cell.disease);
    if (d == std::string::npos) throw ConfigError("synth: unknown disease '" + cell.disease + "'");
    const auto c = layout.demographic_index(cell.dimension, cell.category);
    if (c == std::string::npos)
      throw ConfigError("synth: unknown " + std::string(to_string(cell.dimension)) +
                        " category '" + cell.category + "'");
    const auto w = windows.index_of(cell.window);
    if (w == std::string::npos) throw ConfigError("synth: unknown window '" + cell.window + "'");
    plan.at(d, c, w) = cell.p;
  }
  for (std::size_t d = 0; d < layout.diseases.size(); ++d)
    for (std::size_t c = 0; c < plan.categories; ++c) {
      double prev = 0.0;
      for (std::size_t w = 0; w < plan.windows; ++w) {
        double& r = plan.at(d, c, w);
        if (r < 0.0) r = prev;
        if (r < prev)
          throw ConfigError("synth: rate for " + layout.diseases[d] + " x " +
                            layout.demographic_name(c) + " decreases at window " +
                            windows.label(w));
        prev = r;
      }
    }
  return plan;
}

/// Terms whose only match, in isolation, is their own category over the
/// whole term. Planting these keeps the ground truth exact.
std::vector<std::vector<std::string>> clean_terms(const CompiledMatcher& matcher) {
  std::vector<std::vector<std::string>> by_category(matcher.categories().size());
  for (const auto& term : matcher.terms()) {
    std::string text;
    for (const auto& t : term.tokens) text += (text.empty() ? "" : " ") + t;
    const auto tokens = tokenize(text);
    const auto hits = matcher.find_matches(tokens);
    const auto& info = matcher.categories()[term.category];
    if (hits.size() == 1 && hits[0].dimension == info.dimension &&
        hits[0].category == info.index_in_dimension && hits[0].span_start == 0 &&
        hits[0].span_end + 1 == tokens.size())
      by_category[term.category].push_back(text);
  }
  return by_category;
}

std::string vary_case(const std::string& s, StableRng& rng) {
  std::string out = s;
  switch (rng.below(3)) {
    case 0: break;
    case 1:
      if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 32);
      break;
    default:
      for (char& c : out)
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
  }
  return out;
}

class CorpusWriter {
 public:
  CorpusWriter(fs::path dir, std::size_t per_file) : dir_(std::move(dir)), per_file_(per_file) {
    fs::create_directories(dir_);
  }

  void write(const std::string& line, std::vector<fs::path>& files) {
    if (!out_.is_open() || in_file_ == per_file_) {
      out_.close();
      char name[32];
      std::snprintf(name, sizeof name, "part-%05zu.jsonl", file_no_++);
      files.push_back(dir_ / name);
      out_.open(files.back(), std::ios::binary | std::ios::trunc);
      if (!out_) throw ConfigError("cannot write " + files.back().string());
      in_file_ = 0;
    }
    out_ << line << '\n';
    ++in_file_;
  }

 private:
  fs::path dir_;
  std::size_t per_file_;
  std::size_t file_no_ = 0;
  std::size_t in_file_ = 0;
  std::ofstream out_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

}  // namespace

SynthResult make_synthetic_corpus(const SynthSpec& spec, const Lexicon& lexicon,
                                  std::uint64_t seed, const fs::path& out_dir) {
  spec.windows.validate();
  if (spec.docs_per_file == 0) throw ConfigError("docs_per_file must be positive");
  if (spec.windows.include_document && spec.margin == 0)
    throw ConfigError("margin must be positive when the document window is used");

  const CompiledMatcher matcher(lexicon);
  const auto& layout = matcher.layout();
  const auto terms = clean_terms(matcher);
  const std::size_t ndis = layout.diseases.size();
  const std::size_t ncat = layout.demographic_count();

  std::vector<std::string> filler;
  for (const auto& f : kFiller)
    if (matcher.find_matches(tokenize(f)).empty()) filler.push_back(f);
  if (filler.empty()) throw ConfigError("synth: every filler word is a lexicon term");

  // Band of word distances for each window: (previous half, half].
  const auto& sizes = spec.windows.sizes;
  const std::size_t max_half = sizes.empty() ? 0 : sizes.back() / 2;
  const std::size_t side = max_half + spec.margin;
  std::vector<std::pair<std::size_t, std::size_t>> bands;
  for (std::size_t w = 0; w < sizes.size(); ++w)
    bands.emplace_back(w == 0 ? 1 : sizes[w - 1] / 2 + 1, sizes[w] / 2);
  if (spec.windows.include_document) bands.emplace_back(max_half + 1, side);

  std::set<std::string> labels;
  for (const auto& src : spec.sources)
    if (!valid_label(src.label) || !labels.insert(src.label).second)
      throw ConfigError("synth: bad or duplicate source label '" + src.label + "'");

  fs::create_directories(out_dir / "groundtruth");
  SynthResult result;
  result.truth = CooccurrenceMatrix(make_run_meta(matcher, spec.windows));
  StableRng rng(seed);

  for (const auto& src : spec.sources) {
    const RatePlan plan = build_plan(src, layout, spec.windows);
    CorpusWriter writer(out_dir / "corpus" / src.label, spec.docs_per_file);
    CountBlock truth(ndis, spec.windows.count(), ncat);
    bool any_doc = false;
    std::uint64_t doc_no = 0;

    for (const auto& [disease, n] : src.windows_per_disease) {
      const auto d = layout.disease_index(disease);
      if (d == std::string::npos) throw ConfigError("synth: unknown disease '" + disease + "'");
      const auto& disease_terms = terms[d];
      if (disease_terms.empty())
        throw ConfigError("synth: no plantable term for disease '" + disease + "'");

      for (std::uint64_t i = 0; i < n; ++i) {
        const std::string& dterm = disease_terms[rng.below(disease_terms.size())];
        const auto dtokens = tokenize(dterm);
        const std::size_t len = side + dtokens.size() + side;
        const std::size_t s = side;
        const std::size_t e = side + dtokens.size() - 1;

        std::vector<std::string> words(len);
        std::vector<bool> used(len, false);  // occupied or adjacent to a term
        auto occupy = [&](std::size_t a, std::size_t b) {
          for (std::size_t k = (a == 0 ? 0 : a - 1); k <= std::min(b + 1, len - 1); ++k) used[k] = true;
        };
        auto place = [&](std::size_t a, const std::string& term, bool vary) {
          const auto toks = tokenize(term);
          for (std::size_t k = 0; k < toks.size(); ++k) {
            std::string t(toks[k].text);
            words[a + k] = vary ? vary_case(t, rng) : t;
          }
          if (spec.decorate && rng.chance(0.1)) words[a + toks.size() - 1] += ",";
          if (spec.decorate && rng.chance(0.05)) words[a] = "(" + words[a];
          occupy(a, a + toks.size() - 1);
        };
        const bool vary = spec.decorate && lexicon.case_mode == CaseMode::fold;
        place(s, dterm, vary);

        std::array<std::size_t, 2> nearest_band{kNoBand, kNoBand};
        for (std::size_t c = 0; c < ncat; ++c) {
          const double u = rng.unit();
          std::size_t band = kNoBand;
          for (std::size_t w = 0; w < bands.size(); ++w) {
            if (u < plan.rate[(d * ncat + c) * plan.windows + w]) {
              band = w;
              break;
            }
          }
          if (band == kNoBand) continue;

          const auto& cterms = terms[ndis + c];  // races then genders
          if (cterms.empty())
            throw ConfigError("synth: no plantable term for category '" +
                              layout.demographic_name(c) + "'");
          const std::string& cterm = cterms[rng.below(cterms.size())];
          const std::size_t clen = tokenize(cterm).size();

          // Candidate starts at a distance inside the band, either side.
          std::vector<std::size_t> starts;
          const auto [lo, hi] = bands[band];
          for (std::size_t dist = lo; dist <= hi; ++dist) {
            if (e + dist + clen - 1 < len) starts.push_back(e + dist);
            if (s >= dist + clen - 1) starts.push_back(s - dist - (clen - 1));
          }
          std::vector<std::size_t> free;
          for (auto a : starts) {
            bool ok = true;
            for (std::size_t k = a; k < a + clen && ok; ++k) ok = !used[k];
            if (ok) free.push_back(a);
          }
          if (free.empty())
            throw ConfigError("synth: window " + spec.windows.label(band) +
                              " is too crowded to plant '" + cterm + "'");
          place(free[rng.below(free.size())], cterm, vary);

          for (std::size_t w = band; w < spec.windows.count(); ++w) ++truth.cell(d, w, c);
          auto& nb = nearest_band[layout.demographic_dimension(c) == Dimension::race ? 0 : 1];
          nb = std::min(nb, band);
        }
        for (std::size_t w = 0; w < spec.windows.count(); ++w) {
          ++truth.total(d, w);
          for (std::size_t slot = 0; slot < 2; ++slot)
            if (nearest_band[slot] == kNoBand || nearest_band[slot] > w) ++truth.none(d, w, slot);
        }

        for (std::size_t k = 0; k < len; ++k) {
          if (!words[k].empty()) continue;
          std::string f = filler[rng.below(filler.size())];
          if (spec.decorate) {
            const auto roll = rng.below(100);
            if (roll < 2) f = "\\emph{" + f + "}";
            else if (roll < 3) f = "\\textbf{" + f + "}";
            else if (roll < 4) f = "$" + f + "$";
            else if (roll < 9) f += ".";
          }
          words[k] = std::move(f);
        }
        std::string text;
        text.reserve(len * 4);
        for (std::size_t k = 0; k < len; ++k) {
          if (k) text += (spec.decorate && rng.chance(0.01)) ? '\n' : ' ';
          text += words[k];
        }

        json rec;
        rec["text"] = std::move(text);
        rec["meta"] = {{"id", src.label + "-" + std::to_string(doc_no++)},
                       {"generator", "coaudit-synth"}};
        const std::string line = rec.dump();
        writer.write(line, result.files);
        result.truth.add_fingerprint(fnv1a64(line));
        result.bytes += line.size() + 1;
        ++result.documents;
        any_doc = true;
      }
    }
    if (any_doc) result.truth.add(src.label, truth);
  }

  write_text(out_dir / "groundtruth" / "counts.csv", report::counts_csv(result.truth));
  write_text(out_dir / "groundtruth" / "totals.csv", report::totals_csv(result.truth));
  snapshot(result.truth, out_dir / "groundtruth" / "snapshot.json");

  json run;
  run["sources"] = json::array();
  for (const auto& src : spec.sources)
    run["sources"].push_back({{"label", src.label}, {"paths", {"corpus/" + src.label}}});
  if (spec.lexicon_path) run["lexicon"] = fs::absolute(*spec.lexicon_path).string();
  run["windows"] = {{"sizes", spec.windows.sizes},
                    {"include_document", spec.windows.include_document}};
  result.run_config = out_dir / "run.json";
  write_text(result.run_config, run.dump(2) + "\n");
  return result;
}

}  // namespace coaudit
