#include "coaudit/matrix.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coaudit/error.hpp"
#include "coaudit/hash.hpp"

namespace coaudit {

using nlohmann::json;

RunMeta make_run_meta(const CompiledMatcher& matcher, const WindowConfig& windows) {
  RunMeta meta;
  meta.lexicon_hash = matcher.lexicon_hash();
  meta.layout = matcher.layout();
  meta.windows = windows;
  return meta;
}

CountBlock& CooccurrenceMatrix::block(const std::string& source) {
  auto it = sources_.find(source);
  if (it == sources_.end()) {
    it = sources_
             .emplace(source, CountBlock(meta_.layout.diseases.size(),
                                         meta_.windows.count(),
                                         meta_.layout.demographic_count()))
             .first;
  }
  return it->second;
}

const CountBlock* CooccurrenceMatrix::find(const std::string& source) const {
  const auto it = sources_.find(source);
  return it == sources_.end() ? nullptr : &it->second;
}

void CooccurrenceMatrix::add(const std::string& source, const CountBlock& counts) {
  block(source) += counts;
}

std::size_t CooccurrenceMatrix::disease_index(std::string_view disease) const {
  const auto d = meta_.layout.disease_index(disease);
  if (d == std::string::npos)
    throw ConfigError("unknown disease '" + std::string(disease) + "'");
  return d;
}

std::size_t CooccurrenceMatrix::window_index(std::string_view window) const {
  const auto w = meta_.windows.index_of(std::string(window));
  if (w == std::string::npos)
    throw ConfigError("unknown window '" + std::string(window) + "'");
  return w;
}

std::size_t CooccurrenceMatrix::category_index(Dimension dim,
                                               std::string_view category) const {
  const auto c = meta_.layout.demographic_index(dim, category);
  if (c == std::string::npos)
    throw ConfigError("unknown " + std::string(to_string(dim)) + " category '" +
                      std::string(category) + "'");
  return c;
}

std::uint64_t CooccurrenceMatrix::cell(const std::string& source,
                                       std::string_view disease,
                                       std::string_view window, Dimension dim,
                                       std::string_view category) const {
  const auto d = disease_index(disease);
  const auto w = window_index(window);
  const auto c = category_index(dim, category);
  const auto* b = find(source);
  return b ? b->cell(d, w, c) : 0;
}

std::uint64_t CooccurrenceMatrix::total(const std::string& source,
                                        std::string_view disease,
                                        std::string_view window) const {
  const auto d = disease_index(disease);
  const auto w = window_index(window);
  const auto* b = find(source);
  return b ? b->total(d, w) : 0;
}

std::uint64_t CooccurrenceMatrix::no_demographic(const std::string& source,
                                                 std::string_view disease,
                                                 std::string_view window,
                                                 Dimension dim) const {
  const auto d = disease_index(disease);
  const auto w = window_index(window);
  const auto slot = demographic_slot(dim);
  const auto* b = find(source);
  return b ? b->none(d, w, slot) : 0;
}

void merge_into(CooccurrenceMatrix& into, const CooccurrenceMatrix& from) {
  if (!from.has_meta()) return;
  if (!into.has_meta()) {
    into = from;
    return;
  }
  if (!into.meta().compatible(from.meta()))
    throw MismatchError(
        "cannot merge matrices from different runs (lexicon or window "
        "configuration differs)");
  for (const auto& [source, counts] : from.sources()) into.add(source, counts);
  into.add_fingerprint(from.meta().corpus_fingerprint);
}

CooccurrenceMatrix merge(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b) {
  CooccurrenceMatrix out = a;
  merge_into(out, b);
  return out;
}

// --- snapshot ---------------------------------------------------------------

namespace {

constexpr std::string_view kFormat = "coaudit-snapshot";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const json& j, const char* what) {
  if (!j.is_string() || j.get_ref<const std::string&>().size() != 16)
    throw FormatError(std::string("snapshot: bad ") + what);
  const auto& s = j.get_ref<const std::string&>();
  std::uint64_t v = 0;
  for (char c : s) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
    else throw FormatError(std::string("snapshot: bad ") + what);
  }
  return v;
}

std::vector<std::uint64_t> read_counts(const json& j, std::size_t expected,
                                       const std::string& what) {
  if (!j.is_array() || j.size() != expected)
    throw FormatError("snapshot: " + what + " has wrong length");
  std::vector<std::uint64_t> out;
  out.reserve(expected);
  for (const auto& v : j) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw FormatError("snapshot: " + what + " holds a non-count value");
    out.push_back(v.get<std::uint64_t>());
  }
  return out;
}

std::vector<std::string> read_names(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string("snapshot: bad ") + what);
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw FormatError(std::string("snapshot: bad ") + what);
    out.push_back(v.get<std::string>());
  }
  return out;
}

void check_block(const CountBlock& b, const std::string& source) {
  for (std::size_t d = 0; d < b.diseases; ++d)
    for (std::size_t w = 0; w < b.windows; ++w) {
      const auto total = b.total(d, w);
      if (total != b.total(d, 0))
        throw FormatError("snapshot: source '" + source +
                          "' has totals that vary across windows");
      for (std::size_t c = 0; c < b.categories; ++c)
        if (b.cell(d, w, c) > total)
          throw FormatError("snapshot: source '" + source +
                            "' has a count above its window total");
      for (std::size_t s = 0; s < 2; ++s)
        if (b.none(d, w, s) > total)
          throw FormatError("snapshot: source '" + source +
                            "' has a no-demographic count above its total");
    }
}

}  // namespace

std::string to_snapshot(const CooccurrenceMatrix& m) {
  const RunMeta& meta = m.meta();
  json payload;
  payload["has_meta"] = m.has_meta();
  payload["run_meta"] = {
      {"lexicon_hash", hex64(meta.lexicon_hash)},
      {"layout",
       {{"disease", meta.layout.diseases},
        {"race", meta.layout.races},
        {"gender", meta.layout.genders}}},
      {"windows",
       {{"sizes", meta.windows.sizes},
        {"include_document", meta.windows.include_document}}},
      {"corpus_fingerprint", hex64(meta.corpus_fingerprint)}};
  json sources = json::object();
  for (const auto& [name, b] : m.sources()) {
    sources[name] = {{"cells", b.cells}, {"totals", b.totals}, {"no_demo", b.no_demo}};
  }
  payload["sources"] = std::move(sources);

  const std::string body = payload.dump();
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kSnapshotVersion;
  doc["payload"] = std::move(payload);
  doc["checksum"] = hex64(fnv1a64(body));
  return doc.dump() + "\n";
}

CooccurrenceMatrix from_snapshot(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw FormatError("snapshot: not a valid snapshot file (JSON parse failed)");
  if (!doc.contains("format") || doc["format"] != kFormat)
    throw FormatError("snapshot: missing or wrong format tag");
  if (!doc.contains("version") || !doc["version"].is_number_integer())
    throw FormatError("snapshot: missing version");
  const int version = doc["version"].get<int>();
  if (version != kSnapshotVersion)
    throw FormatError("snapshot: file is version " + std::to_string(version) +
                      ", this build reads version " +
                      std::to_string(kSnapshotVersion));
  if (!doc.contains("payload") || !doc.contains("checksum"))
    throw FormatError("snapshot: missing payload or checksum");
  const json& payload = doc["payload"];
  if (hex64(fnv1a64(payload.dump())) != doc["checksum"])
    throw FormatError("snapshot: checksum mismatch (file is corrupted)");

  try {
    const json& rm = payload.at("run_meta");
    RunMeta meta;
    meta.lexicon_hash = parse_hex64(rm.at("lexicon_hash"), "lexicon_hash");
    meta.corpus_fingerprint = parse_hex64(rm.at("corpus_fingerprint"), "fingerprint");
    meta.layout.diseases = read_names(rm.at("layout").at("disease"), "layout");
    meta.layout.races = read_names(rm.at("layout").at("race"), "layout");
    meta.layout.genders = read_names(rm.at("layout").at("gender"), "layout");
    meta.windows.sizes = rm.at("windows").at("sizes").get<std::vector<std::uint32_t>>();
    meta.windows.include_document = rm.at("windows").at("include_document").get<bool>();

    CooccurrenceMatrix m;
    if (payload.at("has_meta").get<bool>()) {
      meta.windows.validate();
      m = CooccurrenceMatrix(meta);
    }
    for (const auto& [name, src] : payload.at("sources").items()) {
      if (!m.has_meta()) throw FormatError("snapshot: counts without run metadata");
      CountBlock& b = m.block(name);
      b.cells = read_counts(src.at("cells"), b.cells.size(), name + " cells");
      b.totals = read_counts(src.at("totals"), b.totals.size(), name + " totals");
      b.no_demo = read_counts(src.at("no_demo"), b.no_demo.size(), name + " no_demo");
      check_block(b, name);
    }
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("snapshot: malformed payload: ") + e.what());
  } catch (const ConfigError& e) {
    throw FormatError(std::string("snapshot: ") + e.what());
  }
}

void snapshot(const CooccurrenceMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write snapshot " + path.string());
  out << to_snapshot(m);
  if (!out) throw ConfigError("failed writing snapshot " + path.string());
}

CooccurrenceMatrix restore(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read snapshot " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_snapshot(ss.str());
}

}  // namespace coaudit
