#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coaudit/lexicon.hpp"

namespace testsupport {

namespace fs = std::filesystem;

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("coaudit-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string jsonl_line(const std::string& text) {
  nlohmann::json j;
  j["text"] = text;
  return j.dump() + "\n";
}

/// Random lexicons and documents over a small vocabulary, so that terms
/// collide, nest and share prefixes often.
class RandomCorpus {
 public:
  explicit RandomCorpus(std::uint64_t seed) : rng_(seed) {
    const std::size_t n = pick(12, 40);
    for (std::size_t i = 0; i < n; ++i) vocab_.push_back(word());
    std::sort(vocab_.begin(), vocab_.end());
    vocab_.erase(std::unique(vocab_.begin(), vocab_.end()), vocab_.end());
  }

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& rng() { return rng_; }

  /// At most `max_terms` terms of 1-3 words each.
  coaudit::Lexicon lexicon(std::size_t max_terms = 200) {
    nlohmann::ordered_json j;
    std::size_t budget = max_terms;
    std::size_t serial = 0;
    for (const char* dim : {"disease", "race", "gender"}) {
      nlohmann::ordered_json cats = nlohmann::ordered_json::object();
      const std::size_t ncat = pick(1, 4);
      for (std::size_t c = 0; c < ncat; ++c) {
        std::vector<std::string> terms;
        const std::size_t nterm = std::max<std::size_t>(1, std::min(pick(1, 8), budget / 12 + 1));
        for (std::size_t t = 0; t < nterm && budget > 0; ++t, --budget) {
          std::string term;
          const std::size_t len = coin(0.6) ? 1 : pick(2, 3);
          for (std::size_t k = 0; k < len; ++k) {
            if (k) term += ' ';
            term += vocab_[pick(0, vocab_.size() - 1)];
          }
          terms.push_back(term);
        }
        if (terms.empty()) terms.push_back(vocab_.front());
        cats[std::string(dim) + "_" + std::to_string(serial++)] = terms;
      }
      j[dim] = cats;
    }
    j["options"]["case_mode"] = coin(0.8) ? "fold" : "exact";
    return coaudit::parse_lexicon(j.dump());
  }

  /// Up to `max_tokens` whitespace-separated words. Most come from the
  /// vocabulary with random case and edge punctuation.
  std::string document(std::size_t max_tokens) {
    static const char* kSep[] = {" ", " ", " ", "  ", "\n", "\t", " \r\n "};
    static const char* kEdge[] = {"(", ")", ".", ",", "\"", "'", ";", ":", "!", "?", "[", "]"};
    const std::size_t n = pick(0, max_tokens);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) out += kSep[pick(0, 6)];
      if (coin(0.03)) {
        out += "--";
        continue;
      }
      std::string w = coin(0.7) ? vocab_[pick(0, vocab_.size() - 1)] : filler();
      if (coin(0.2)) {
        for (auto& ch : w)
          if (coin(0.5)) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      }
      if (coin(0.1)) w = kEdge[pick(0, 11)] + w;
      if (coin(0.15)) w += kEdge[pick(0, 11)];
      if (coin(0.02)) w += "-x";
      out += w;
    }
    return out;
  }

 private:
  std::string word() {
    static const char* kSyl[] = {"ka", "lo", "mi", "tur", "sen", "ba", "ri", "dol", "ve", "no"};
    std::string w;
    const std::size_t n = pick(1, 2);
    for (std::size_t i = 0; i < n; ++i) w += kSyl[pick(0, 9)];
    if (coin(0.1)) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    return w;
  }
  std::string filler() {
    static const char* kFill[] = {"the", "of", "and", "patients", "with", "were", "q", "zz9"};
    return kFill[pick(0, 7)];
  }

  std::mt19937_64 rng_;
  std::vector<std::string> vocab_;
};

}  // namespace testsupport
