#include "coaudit/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include <json.hpp>
#include <zlib.h>

#include "coaudit/error.hpp"
#include "coaudit/latex.hpp"

namespace coaudit {

namespace fs = std::filesystem;

std::vector<fs::path> resolve_files(const SourceSpec& spec) {
  if (spec.label.empty()) throw ConfigError("source with empty label");
  std::vector<fs::path> files;
  for (const auto& p : spec.paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        if (entry.is_regular_file()) found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else {
      throw ConfigError("source '" + spec.label + "': cannot read path " +
                        p.string());
    }
  }
  if (files.empty())
    throw ConfigError("source '" + spec.label + "': no readable files");
  return files;
}

// --- LineReader -------------------------------------------------------------

namespace {
constexpr std::size_t kChunk = 1 << 20;
}

LineReader::LineReader(const fs::path& path) : buf_(kChunk) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw ConfigError("cannot open " + path.string());
  unsigned char magic[2] = {0, 0};
  const std::size_t got = std::fread(magic, 1, 2, f);
  if (got == 2 && magic[0] == 0x1f && magic[1] == 0x8b) {
    std::fclose(f);
    gzFile gz = gzopen(path.c_str(), "rb");
    if (!gz) throw ConfigError("cannot open gzip file " + path.string());
    gzbuffer(gz, kChunk);
    gz_ = gz;
  } else {
    std::rewind(f);
    file_ = f;
  }
}

LineReader::~LineReader() {
  if (file_) std::fclose(file_);
  if (gz_) gzclose(static_cast<gzFile>(gz_));
}

bool LineReader::fill() {
  if (eof_) return false;
  std::size_t n = 0;
  if (gz_) {
    const int r = gzread(static_cast<gzFile>(gz_), buf_.data(),
                         static_cast<unsigned>(buf_.size()));
    if (r < 0) {
      int errnum = 0;
      throw FormatError(std::string("gzip read error: ") +
                        gzerror(static_cast<gzFile>(gz_), &errnum));
    }
    n = static_cast<std::size_t>(r);
  } else {
    n = std::fread(buf_.data(), 1, buf_.size(), file_);
  }
  pos_ = 0;
  len_ = n;
  if (n == 0) eof_ = true;
  return n > 0;
}

bool LineReader::next(std::string& line) {
  line.clear();
  bool any = false;
  while (true) {
    if (pos_ == len_ && !fill()) {
      bytes_ += line.size();
      return any;
    }
    any = true;
    const char* start = buf_.data() + pos_;
    const void* nl = std::memchr(start, '\n', len_ - pos_);
    if (nl) {
      const auto n = static_cast<std::size_t>(static_cast<const char*>(nl) - start);
      line.append(start, n);
      pos_ += n + 1;
      bytes_ += line.size() + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    line.append(start, len_ - pos_);
    pos_ = len_;
  }
}

// --- CorpusStream -----------------------------------------------------------

CorpusStream::CorpusStream(SourceSpec spec, std::uint64_t byte_limit)
    : spec_(std::move(spec)), files_(resolve_files(spec_)), limit_(byte_limit) {}

bool CorpusStream::next(std::string& raw) {
  while (true) {
    if (limit_ > 0 && bytes_read() >= limit_) return false;
    if (!reader_) {
      if (file_index_ == files_.size()) return false;
      reader_ = std::make_unique<LineReader>(files_[file_index_++]);
    }
    if (!reader_->next(raw)) {
      done_bytes_ += reader_->bytes_read();
      reader_.reset();
      continue;
    }
    if (std::all_of(raw.begin(), raw.end(), [](char c) {
          return c == ' ' || c == '\t' || c == '\r';
        }))
      continue;
    return true;
  }
}

// --- parse_record -----------------------------------------------------------

namespace {

void collect_meta(const nlohmann::json& obj, const std::string& prefix,
                  const std::string& skip, std::map<std::string, std::string>& out) {
  for (const auto& [key, value] : obj.items()) {
    if (prefix.empty() && key == skip) continue;
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_string()) {
      out.emplace(name, value.get<std::string>());
    } else if (value.is_object()) {
      collect_meta(value, name, skip, out);
    }
  }
}

}  // namespace

std::optional<Document> parse_record(std::string_view raw,
                                     const SourceSpec& spec,
                                     IngestStats& stats, bool with_meta) {
  ++stats.records_read;
  stats.bytes_read += raw.size();
  nlohmann::json obj = nlohmann::json::parse(raw, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    ++stats.parse_errors;
    ++stats.records_skipped;
    return std::nullopt;
  }
  const auto it = obj.find(spec.text_field);
  if (it == obj.end() || !it->is_string()) {
    ++stats.records_skipped;
    return std::nullopt;
  }
  Document doc;
  doc.text = strip_latex(it->get_ref<const std::string&>());
  doc.source = spec.label;
  doc.byte_len = raw.size();
  if (with_meta) collect_meta(obj, "", spec.text_field, doc.meta);
  return doc;
}

}  // namespace coaudit
