#include "coaudit/pipeline.hpp"

#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "coaudit/error.hpp"
#include "coaudit/hash.hpp"
#include "coaudit/scanner.hpp"

namespace coaudit {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::validate() const {
  std::set<std::string> labels;
  for (const auto& s : sources) {
    if (s.label.empty()) throw ConfigError("source with empty label");
    if (!labels.insert(s.label).second)
      throw ConfigError("duplicate source label '" + s.label + "'");
    if (s.paths.empty()) throw ConfigError("source '" + s.label + "' lists no paths");
    if (s.text_field.empty())
      throw ConfigError("source '" + s.label + "' has an empty text_field");
  }
  if (workers < 1) throw ConfigError("worker count must be at least 1");
  windows.validate();
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

WindowConfig parse_windows(const json& j) {
  WindowConfig w;
  if (j.is_array()) {
    w.sizes = j.get<std::vector<std::uint32_t>>();
  } else if (j.is_object()) {
    if (j.contains("sizes")) w.sizes = j.at("sizes").get<std::vector<std::uint32_t>>();
    if (j.contains("include_document")) w.include_document = j.at("include_document").get<bool>();
  } else {
    throw ConfigError("'windows' must be a list of sizes or an object");
  }
  w.validate();
  return w;
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const fs::path& base_dir) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("run config is not a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "sources") {
        for (const auto& s : value) {
          SourceSpec spec;
          spec.label = s.at("label").get<std::string>();
          const auto& paths = s.at("paths");
          if (paths.is_string()) {
            spec.paths.push_back(resolve(base_dir, paths.get<std::string>()));
          } else {
            for (const auto& p : paths) spec.paths.push_back(resolve(base_dir, p.get<std::string>()));
          }
          if (s.contains("text_field")) spec.text_field = s.at("text_field").get<std::string>();
          cfg.sources.push_back(std::move(spec));
        }
      } else if (key == "lexicon") {
        if (!value.is_null()) cfg.lexicon_path = resolve(base_dir, value.get<std::string>());
      } else if (key == "windows") {
        cfg.windows = parse_windows(value);
      } else if (key == "aggregation") {
        cfg.aggregation = parse_aggregation(value.get<std::string>());
      } else if (key == "workers") {
        const auto n = value.get<std::int64_t>();
        if (n < 1) throw ConfigError("worker count must be at least 1");
        cfg.workers = static_cast<std::size_t>(n);
      } else if (key == "output") {
        cfg.output_dir = resolve(base_dir, value.get<std::string>());
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "sample_bytes") {
        cfg.sample_bytes = value.get<std::uint64_t>();
      } else {
        throw ConfigError("unknown run config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read run config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.parent_path());
}

Lexicon load_configured_lexicon(const RunConfig& cfg) {
  return cfg.lexicon_path ? load_lexicon(*cfg.lexicon_path) : default_lexicon();
}

// --- scan -------------------------------------------------------------------

namespace {

constexpr std::size_t kBatchBytes = 4u << 20;
constexpr std::size_t kBatchLines = 8192;

struct Batch {
  std::size_t source = 0;
  std::vector<std::string> lines;
};

/// Private accumulator of one worker.
struct Partial {
  std::vector<CountBlock> blocks;
  std::vector<bool> touched;
  std::vector<IngestStats> stats;
  std::uint64_t fingerprint = 0;
  std::uint64_t documents = 0;

  Partial(std::size_t sources, const CountBlock& empty)
      : blocks(sources, empty), touched(sources, false), stats(sources) {}
};

void process(const Batch& batch, const std::vector<SourceSpec>& specs, Scanner& scanner,
             Partial& part) {
  const SourceSpec& spec = specs[batch.source];
  for (const auto& line : batch.lines) {
    part.fingerprint += fnv1a64(line);
    auto doc = parse_record(line, spec, part.stats[batch.source], false);
    if (!doc) continue;
    ++part.documents;
    part.touched[batch.source] = true;
    scanner.scan_into(doc->text, part.blocks[batch.source]);
  }
}

/// Bounded FIFO between the reader and the workers.
class BatchQueue {
 public:
  explicit BatchQueue(std::size_t capacity) : capacity_(capacity) {}

  void push(Batch b) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_; });
    items_.push_back(std::move(b));
    not_empty_.notify_one();
  }

  bool pop(Batch& out) {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return false;
    out = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return true;
  }

  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable not_full_;
  std::condition_variable not_empty_;
  std::deque<Batch> items_;
  std::size_t capacity_;
  bool closed_ = false;
};

template <typename Sink>
void read_batches(const RunConfig& cfg, Sink&& sink) {
  for (std::size_t s = 0; s < cfg.sources.size(); ++s) {
    CorpusStream stream(cfg.sources[s], cfg.sample_bytes);
    Batch batch{s, {}};
    std::size_t bytes = 0;
    std::string line;
    while (stream.next(line)) {
      bytes += line.size();
      batch.lines.push_back(std::move(line));
      line = std::string();
      if (bytes >= kBatchBytes || batch.lines.size() >= kBatchLines) {
        sink(std::move(batch));
        batch = Batch{s, {}};
        bytes = 0;
      }
    }
    if (!batch.lines.empty()) sink(std::move(batch));
  }
}

}  // namespace

ScanResult run_scan(const RunConfig& cfg, const CompiledMatcher& matcher) {
  cfg.validate();
  // Fail on unreadable paths before any work starts.
  for (const auto& s : cfg.sources) resolve_files(s);

  const std::size_t nsrc = cfg.sources.size();
  const std::size_t nworkers = cfg.workers;
  Scanner probe(matcher, cfg.windows);
  const CountBlock empty = probe.empty_block();

  std::vector<Partial> parts;
  parts.reserve(nworkers);
  for (std::size_t i = 0; i < nworkers; ++i) parts.emplace_back(nsrc, empty);

  if (nworkers == 1) {
    read_batches(cfg, [&](Batch b) { process(b, cfg.sources, probe, parts[0]); });
  } else {
    BatchQueue queue(2 * nworkers);
    std::vector<std::exception_ptr> errors(nworkers);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nworkers; ++i) {
      pool.emplace_back([&, i] {
        try {
          Scanner scanner(matcher, cfg.windows);
          Batch b;
          while (queue.pop(b)) process(b, cfg.sources, scanner, parts[i]);
        } catch (...) {
          errors[i] = std::current_exception();
          Batch drain;
          while (queue.pop(drain)) {
          }
        }
      });
    }
    std::exception_ptr reader_error;
    try {
      read_batches(cfg, [&](Batch b) { queue.push(std::move(b)); });
    } catch (...) {
      reader_error = std::current_exception();
    }
    queue.close();
    for (auto& t : pool) t.join();
    if (reader_error) std::rethrow_exception(reader_error);
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ScanResult result;
  result.matrix = CooccurrenceMatrix(make_run_meta(matcher, cfg.windows));
  for (std::size_t s = 0; s < nsrc; ++s) result.per_source[cfg.sources[s].label] = {};
  for (const auto& part : parts) {
    result.matrix.add_fingerprint(part.fingerprint);
    result.documents += part.documents;
    for (std::size_t s = 0; s < nsrc; ++s) {
      const auto& label = cfg.sources[s].label;
      result.per_source[label] += part.stats[s];
      result.stats += part.stats[s];
      if (part.touched[s]) result.matrix.add(label, part.blocks[s]);
    }
  }
  return result;
}

}  // namespace coaudit
