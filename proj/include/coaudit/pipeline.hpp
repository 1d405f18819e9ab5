#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coaudit/ingest.hpp"
#include "coaudit/matrix.hpp"
#include "coaudit/stats.hpp"

namespace coaudit {

struct RunConfig {
  std::vector<SourceSpec> sources;
  std::optional<std::filesystem::path> lexicon_path;  ///< default lexicon when unset
  WindowConfig windows;
  Aggregation aggregation = Aggregation::micro;
  std::size_t workers = 1;
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;
  std::uint64_t sample_bytes = 0;  ///< per-source prefix limit, 0 = all

  /// Throws ConfigError for duplicate/empty labels, zero workers or a bad
  /// window config.
  void validate() const;
};

/// JSON run config. Relative paths resolve against `base_dir`.
///   {"sources": [{"label": "arxiv", "paths": ["arxiv/"], "text_field": "text"}],
///    "lexicon": "lexicon.json", "windows": {"sizes": [20, 100, 200, 500],
///    "include_document": true}, "aggregation": "micro", "workers": 4,
///    "output": "out", "seed": 0, "sample_bytes": 0}
RunConfig parse_run_config(std::string_view json_text,
                           const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

Lexicon load_configured_lexicon(const RunConfig& cfg);

struct ScanResult {
  CooccurrenceMatrix matrix;
  IngestStats stats;
  std::map<std::string, IngestStats> per_source;
  std::uint64_t documents = 0;
};

/// Streams every source through parse -> scan and reduces the per-worker
/// counts. The result does not depend on the worker count.
ScanResult run_scan(const RunConfig& cfg, const CompiledMatcher& matcher);

}  // namespace coaudit
