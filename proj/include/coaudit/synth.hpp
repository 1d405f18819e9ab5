#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coaudit/lexicon.hpp"
#include "coaudit/matrix.hpp"

namespace coaudit {

/// Planted co-occurrence probability for one cell. `p` is the probability
/// that a disease window of size `window` contains the category; rates for
/// one (disease, dimension, category) must not decrease as windows widen.
/// Windows not listed inherit the rate of the nearest smaller listed window
/// (0 below the first).
struct RateCell {
  std::string disease;
  Dimension dimension = Dimension::race;
  std::string category;
  std::string window;  ///< "20", "100", ... or "document"
  double p = 0.0;
};

struct SynthSource {
  std::string label;
  /// Number of disease windows (one per document) per disease.
  std::map<std::string, std::uint64_t> windows_per_disease;
  std::vector<RateCell> rates;
};

/// JSON form:
///   {"lexicon": "lexicon.json", "windows": {"sizes": [20, 100, 200, 500],
///    "include_document": true}, "docs_per_file": 100000, "decorate": true,
///    "sources": [{"label": "synthetic",
///                 "windows_per_disease": {"hypertension": 1000},
///                 "rates": [{"disease": "hypertension", "dimension": "race",
///                            "category": "Black", "window": 100, "p": 0.5}]}]}
struct SynthSpec {
  std::optional<std::filesystem::path> lexicon_path;
  WindowConfig windows;
  std::vector<SynthSource> sources;
  std::size_t docs_per_file = 100000;
  /// Filler words on each side beyond the widest window.
  std::size_t margin = 8;
  /// Wrap some filler in LaTeX commands and punctuation and vary the case of
  /// planted terms. Token positions are unaffected.
  bool decorate = true;
};

SynthSpec parse_synth_spec(std::string_view json_text, const std::filesystem::path& base_dir);
SynthSpec load_synth_spec(const std::filesystem::path& path);

struct SynthResult {
  /// Exact counts of what was planted, in the scan's matrix form.
  CooccurrenceMatrix truth;
  std::vector<std::filesystem::path> files;
  std::filesystem::path run_config;  ///< run.json that scans the corpus
  std::uint64_t documents = 0;
  std::uint64_t bytes = 0;
};

/// Writes corpus/<label>/part-NNNNN.jsonl files, groundtruth/{counts,totals}.csv,
/// groundtruth/snapshot.json and run.json under `out_dir`. Identical inputs
/// produce byte-identical files. Throws ConfigError for probabilities outside
/// [0, 1], decreasing rates or unknown names.
SynthResult make_synthetic_corpus(const SynthSpec& spec, const Lexicon& lexicon,
                                  std::uint64_t seed, const std::filesystem::path& out_dir);

}  // namespace coaudit
