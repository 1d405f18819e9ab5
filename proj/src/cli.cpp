#include "coaudit/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "coaudit/error.hpp"
#include "coaudit/pipeline.hpp"
#include "coaudit/report.hpp"
#include "coaudit/synth.hpp"

namespace coaudit {

namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing " + path.string());
}

/// Writes outputs into `dir` and removes every file it wrote if the run
/// fails before commit().
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_.string());
  }
  ~OutputSet() {
    if (committed_) return;
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

  fs::path path(const std::string& name) {
    written_.push_back(dir_ / name);
    return written_.back();
  }
  void write(const std::string& name, const std::string& text) { write_file(path(name), text); }
  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool committed_ = false;
};

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << v;
  return s.str();
}

int cmd_scan(const fs::path& config_path, std::optional<std::size_t> workers,
             std::optional<std::uint64_t> sample_bytes, std::optional<fs::path> out_dir,
             std::ostream& out) {
  RunConfig cfg = load_run_config(config_path);
  if (workers) cfg.workers = *workers;
  if (sample_bytes) cfg.sample_bytes = *sample_bytes;
  if (out_dir) cfg.output_dir = *out_dir;
  if (cfg.output_dir.empty()) throw UsageError("scan needs --out or an 'output' entry in the config");
  cfg.validate();

  const Lexicon lexicon = load_configured_lexicon(cfg);
  const CompiledMatcher matcher(lexicon);

  OutputSet outputs(cfg.output_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const ScanResult result = run_scan(cfg, matcher);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  snapshot(result.matrix, outputs.path("snapshot.json"));
  outputs.write("counts.csv", report::counts_csv(result.matrix));
  outputs.write("totals.csv", report::totals_csv(result.matrix));

  std::ostringstream log;
  log << "lexicon_hash=" << hex(matcher.lexicon_hash()) << '\n'
      << "lexicon_terms=" << matcher.terms().size() << '\n'
      << "corpus_fingerprint=" << hex(result.matrix.meta().corpus_fingerprint) << '\n'
      << "workers=" << cfg.workers << '\n'
      << "documents=" << result.documents << '\n'
      << "records_read=" << result.stats.records_read << '\n'
      << "records_skipped=" << result.stats.records_skipped << '\n'
      << "parse_errors=" << result.stats.parse_errors << '\n'
      << "bytes_read=" << result.stats.bytes_read << '\n'
      << "seconds=" << seconds << '\n';
  for (const auto& [label, st] : result.per_source)
    log << "source." << label << "=records:" << st.records_read
        << ",skipped:" << st.records_skipped << ",parse_errors:" << st.parse_errors
        << ",bytes:" << st.bytes_read << '\n';
  for (const auto& w : lexicon.warnings) log << "warning=" << w << '\n';
  if (lexicon.unfilled_disease_slots > 0)
    log << "warning=lexicon has " << lexicon.unfilled_disease_slots
        << " unfilled disease slots\n";
  outputs.write("run.log", log.str());
  outputs.commit();

  out << "scanned " << result.documents << " documents (" << result.stats.records_skipped
      << " skipped) from " << cfg.sources.size() << " sources in " << seconds << " s -> "
      << cfg.output_dir.string() << '\n';
  return kExitOk;
}

BaselineTable load_named_baseline(const std::string& arg) {
  if (arg == "census") return census_2020_baseline();
  const auto eq = arg.find('=');
  if (eq != std::string::npos && !fs::exists(arg))
    return load_baseline(arg.substr(eq + 1), arg.substr(0, eq));
  return load_baseline(arg);
}

int cmd_report(const fs::path& snapshot_path, const std::string& mode,
               const std::vector<std::string>& baseline_args, const std::string& window,
               std::optional<std::string> aggregation, bool four_race, const fs::path& out_dir,
               std::ostream& out) {
  static const std::vector<std::string> kModes{"shares", "representation", "window-profile",
                                               "compare"};
  if (std::find(kModes.begin(), kModes.end(), mode) == kModes.end())
    throw UsageError("unknown report mode '" + mode +
                     "' (expected shares, representation, window-profile or compare)");
  if (mode == "compare" && baseline_args.empty())
    throw UsageError("compare mode needs at least one --baseline");

  const CooccurrenceMatrix m = restore(snapshot_path);
  if (!m.has_meta()) throw ConfigError("snapshot holds no run metadata");
  m.window_index(window);
  std::vector<BaselineTable> baselines;
  for (const auto& b : baseline_args) baselines.push_back(load_named_baseline(b));

  OutputSet outputs(out_dir);
  std::string text;
  if (mode == "shares") {
    const auto tables = report::share_tables(m, window);
    outputs.write("shares.csv", report::shares_csv(tables));
    text = report::shares_text(tables.front(), baselines, m.meta().layout);
    outputs.write("shares.txt", text);
  } else if (mode == "representation") {
    const Aggregation agg = parse_aggregation(aggregation.value_or("micro"));
    outputs.write("representation.csv", report::representation_csv(m, window, agg));
    outputs.write("summary.csv", report::summary_csv(m));
    text = report::representation_text(m, window, agg);
    outputs.write("representation.txt", text);
  } else if (mode == "window-profile") {
    const Aggregation agg = parse_aggregation(aggregation.value_or("macro"));
    outputs.write("window_profile.csv", report::window_profile_csv(m, agg));
  } else {
    const auto tables = report::share_tables(m, window);
    std::vector<ShareTable> per_disease;
    for (const auto& t : tables)
      if (t.source == kAllScope) per_disease.push_back(t);
    std::vector<ComparisonTable> comparisons;
    for (const auto& b : baselines)
      comparisons.push_back(compare_to_baseline(per_disease, b, four_race));
    outputs.write("compare.csv", report::compare_csv(comparisons));
    text = report::compare_text(comparisons);
    outputs.write("compare.txt", text);
  }
  outputs.commit();
  out << text;
  out << "report written to " << out_dir.string() << '\n';
  return kExitOk;
}

int cmd_synth(const fs::path& spec_path, std::uint64_t seed, const fs::path& out_dir,
              std::ostream& out) {
  const SynthSpec spec = load_synth_spec(spec_path);
  const Lexicon lexicon = spec.lexicon_path ? load_lexicon(*spec.lexicon_path) : default_lexicon();
  const SynthResult r = make_synthetic_corpus(spec, lexicon, seed, out_dir);
  out << "wrote " << r.documents << " documents (" << r.bytes << " bytes) in " << r.files.size()
      << " files; ground truth in " << (out_dir / "groundtruth").string() << "; scan with "
      << r.run_config.string() << '\n';
  return kExitOk;
}

int cmd_merge(const std::vector<fs::path>& inputs, const fs::path& out_file, std::ostream& out) {
  CooccurrenceMatrix merged;
  for (const auto& p : inputs) merge_into(merged, restore(p));
  snapshot(merged, out_file);
  out << "merged " << inputs.size() << " snapshots -> " << out_file.string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"coaudit: disease x demographic co-occurrence audit of JSONL corpora"};
  app.require_subcommand(1);

  fs::path scan_config;
  std::optional<std::size_t> scan_workers;
  std::optional<std::uint64_t> scan_sample;
  std::optional<fs::path> scan_out;
  auto* scan = app.add_subcommand("scan", "Scan a corpus and write snapshot + count CSVs");
  scan->add_option("--config", scan_config, "Run config (JSON)")->required();
  scan->add_option("--workers", scan_workers, "Worker threads")->check(CLI::PositiveNumber);
  scan->add_option("--sample-bytes", scan_sample, "Read at most N bytes per source");
  scan->add_option("--out", scan_out, "Output directory");

  fs::path rep_snapshot;
  std::string rep_mode;
  std::vector<std::string> rep_baselines;
  std::string rep_window = "100";
  std::optional<std::string> rep_agg;
  bool rep_four = false;
  fs::path rep_out;
  auto* rep = app.add_subcommand("report", "Compute report tables from a snapshot");
  rep->add_option("--snapshot", rep_snapshot, "Snapshot file")->required();
  rep->add_option("--mode", rep_mode, "shares | representation | window-profile | compare")
      ->required();
  rep->add_option("--baseline", rep_baselines,
                  "Baseline file, NAME=FILE, or 'census' for the shipped 2020 census");
  rep->add_option("--window", rep_window, "Window for shares/representation/compare");
  rep->add_option("--aggregation", rep_agg, "micro | macro");
  rep->add_flag("--four-race", rep_four, "Renormalize race shares over White/Black/Asian/Hispanic");
  rep->add_option("--out", rep_out, "Output directory")->required();

  fs::path syn_spec;
  std::uint64_t syn_seed = 0;
  fs::path syn_out;
  auto* syn = app.add_subcommand("synth", "Generate a planted-rate synthetic corpus");
  syn->add_option("--spec", syn_spec, "Synth spec (JSON)")->required();
  syn->add_option("--seed", syn_seed, "Random seed")->required();
  syn->add_option("--out", syn_out, "Output directory")->required();

  std::vector<fs::path> merge_inputs;
  fs::path merge_out;
  auto* mrg = app.add_subcommand("merge", "Merge snapshots from compatible runs");
  mrg->add_option("inputs", merge_inputs, "Snapshot files")->required();
  mrg->add_option("--out", merge_out, "Merged snapshot file")->required();

  std::vector<std::string> argv_store{"coaudit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*scan) return cmd_scan(scan_config, scan_workers, scan_sample, scan_out, out);
    if (*rep)
      return cmd_report(rep_snapshot, rep_mode, rep_baselines, rep_window, rep_agg, rep_four,
                        rep_out, out);
    if (*syn) return cmd_synth(syn_spec, syn_seed, syn_out, out);
    if (*mrg) return cmd_merge(merge_inputs, merge_out, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace coaudit
