#include "coaudit/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coaudit/error.hpp"
#include "coaudit/hash.hpp"
#include "coaudit/resources.hpp"

namespace coaudit {

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::disease: return "disease";
    case Dimension::race: return "race";
    case Dimension::gender: return "gender";
  }
  return "?";
}

Dimension parse_dimension(std::string_view name) {
  if (name == "disease") return Dimension::disease;
  if (name == "race") return Dimension::race;
  if (name == "gender") return Dimension::gender;
  throw ConfigError("unknown dimension '" + std::string(name) +
                    "' (expected disease, race or gender)");
}

std::size_t demographic_slot(Dimension d) {
  if (d == Dimension::disease)
    throw ConfigError("disease is not a demographic dimension");
  return d == Dimension::race ? 0 : 1;
}

std::vector<std::string> term_tokens(std::string_view term, CaseMode mode) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(term)) {
    out.push_back(mode == CaseMode::fold ? fold_case(t.text)
                                         : std::string(t.text));
  }
  return out;
}

// --- Lexicon ----------------------------------------------------------------

std::vector<std::string> Lexicon::names(Dimension d) const {
  std::vector<std::string> out;
  for (const auto& c : entries)
    if (c.dimension == d) out.push_back(c.name);
  return out;
}

std::size_t Lexicon::term_count() const {
  std::size_t n = 0;
  for (const auto& c : entries) n += c.terms.size();
  return n;
}

std::uint64_t Lexicon::hash() const {
  std::string canon;
  canon += case_mode == CaseMode::fold ? "fold" : "exact";
  canon += match_pronouns ? "|pronouns\n" : "|nopronouns\n";
  for (const auto& c : entries) {
    canon += to_string(c.dimension);
    canon += '\x1f';
    canon += c.name;
    for (const auto& t : c.terms) {
      canon += '\x1f';
      canon += t;
    }
    canon += '\n';
  }
  return fnv1a64(canon);
}

namespace {

using ojson = nlohmann::ordered_json;

void check_name(const std::string& name, std::string_view origin) {
  if (name.empty())
    throw ConfigError(std::string(origin) + ": empty category name");
  if (name == kAllScope || name == kNoDemographic)
    throw ConfigError(std::string(origin) + ": category name '" + name +
                      "' is reserved");
}

}  // namespace

Lexicon parse_lexicon(std::string_view json_text, std::string_view origin) {
  const std::string where(origin);
  ojson doc;
  try {
    doc = ojson::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(where + ": invalid lexicon JSON: " + e.what());
  }
  if (!doc.is_object())
    throw ConfigError(where + ": lexicon must be a JSON object");

  Lexicon lex;
  std::array<std::vector<Category>, 3> by_dim;
  std::array<bool, 3> seen{};

  if (doc.contains("options")) {
    const auto& value = doc["options"];
    if (!value.is_object())
      throw ConfigError(where + ": 'options' must be an object");
    for (const auto& [opt, v] : value.items()) {
      try {
        if (opt == "case_mode") {
          const auto mode = v.get<std::string>();
          if (mode == "fold") lex.case_mode = CaseMode::fold;
          else if (mode == "exact") lex.case_mode = CaseMode::exact;
          else throw ConfigError(where + ": unknown case_mode '" + mode + "'");
        } else if (opt == "match_pronouns") {
          lex.match_pronouns = v.get<bool>();
        } else if (opt == "unfilled_disease_slots") {
          lex.unfilled_disease_slots = v.get<std::size_t>();
        } else if (opt == "note") {
          // free text
        } else {
          throw ConfigError(where + ": unknown option '" + opt + "'");
        }
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(where + ": option '" + opt + "': " + e.what());
      }
    }
  }

  for (const auto& [key, value] : doc.items()) {
    if (key == "options") continue;

    const Dimension dim = [&] {
      try {
        return parse_dimension(key);
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }();
    const auto slot = static_cast<std::size_t>(dim);
    seen[slot] = true;
    if (!value.is_object())
      throw ConfigError(where + ": dimension '" + key +
                        "' must map category names to term lists");

    std::set<std::string> names;
    for (const auto& [name, terms] : value.items()) {
      check_name(name, where);
      if (!names.insert(name).second)
        throw ConfigError(where + ": duplicate category '" + name + "'");
      if (!terms.is_array() || terms.empty())
        throw ConfigError(where + ": category " + key + ":" + name +
                          " has no terms");

      Category cat{dim, name, {}};
      std::set<std::vector<std::string>> normalized;
      for (const auto& t : terms) {
        if (!t.is_string())
          throw ConfigError(where + ": non-string term in " + key + ":" + name);
        auto term = t.get<std::string>();
        auto toks = term_tokens(term, lex.case_mode);
        if (toks.empty())
          throw ConfigError(where + ": empty term in " + key + ":" + name);
        for (const auto& tok : toks)
          if (tok.empty())
            throw ConfigError(where + ": term '" + term + "' in " + key + ":" +
                              name + " contains a punctuation-only word");
        if (!normalized.insert(std::move(toks)).second) {
          lex.warnings.push_back("duplicate term '" + term + "' in " + key +
                                 ":" + name + " collapsed");
          continue;
        }
        cat.terms.push_back(std::move(term));
      }
      by_dim[slot].push_back(std::move(cat));
    }
  }

  for (Dimension d : {Dimension::disease, Dimension::race, Dimension::gender}) {
    const auto slot = static_cast<std::size_t>(d);
    if (!seen[slot] || by_dim[slot].empty())
      throw ConfigError(where + ": lexicon defines no " +
                        std::string(to_string(d)) + " categories");
    for (auto& c : by_dim[slot]) lex.entries.push_back(std::move(c));
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read lexicon file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lexicon(ss.str(), path.string());
}

Lexicon default_lexicon() {
  return parse_lexicon(resources::default_lexicon_json(), "default lexicon");
}

// --- LexiconLayout ----------------------------------------------------------

const std::vector<std::string>& LexiconLayout::of(Dimension d) const {
  switch (d) {
    case Dimension::disease: return diseases;
    case Dimension::race: return races;
    case Dimension::gender: return genders;
  }
  return diseases;
}

std::size_t LexiconLayout::demographic_index(Dimension d,
                                             std::string_view name) const {
  if (d == Dimension::disease) return std::string::npos;
  const auto& names = of(d);
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::string::npos;
  const auto local = static_cast<std::size_t>(it - names.begin());
  return d == Dimension::race ? local : races.size() + local;
}

std::size_t LexiconLayout::disease_index(std::string_view name) const {
  const auto it = std::find(diseases.begin(), diseases.end(), name);
  return it == diseases.end() ? std::string::npos
                              : static_cast<std::size_t>(it - diseases.begin());
}

// --- CompiledMatcher --------------------------------------------------------

namespace {

const std::vector<std::string>& pronouns_for(std::string_view category) {
  static const std::vector<std::string> female{"she", "her", "hers",
                                               "herself"};
  static const std::vector<std::string> male{"he", "him", "his", "himself"};
  static const std::vector<std::string> none;
  const auto folded = fold_case(category);
  if (folded == "female") return female;
  if (folded == "male") return male;
  return none;
}

std::size_t table_capacity(std::size_t n) {
  std::size_t cap = 16;
  while (cap < n * 2) cap <<= 1;
  return cap;
}

}  // namespace

std::uint64_t CompiledMatcher::token_hash(std::string_view token) const {
  std::uint64_t h = kFnvOffset;
  if (case_mode_ == CaseMode::fold) {
    for (char c : token) {
      h ^= static_cast<unsigned char>(fold_ascii(c));
      h *= kFnvPrime;
    }
  } else {
    h = fnv1a64(token);
  }
  return h;
}

std::uint32_t CompiledMatcher::intern(const std::string& token) {
  const auto it = std::find(vocab_.begin(), vocab_.end(), token);
  if (it != vocab_.end()) return static_cast<std::uint32_t>(it - vocab_.begin());
  vocab_.push_back(token);
  return static_cast<std::uint32_t>(vocab_.size() - 1);
}

std::uint32_t CompiledMatcher::lookup(std::string_view token) const {
  if (token.size() < min_len_ || token.size() > max_len_) return kNone;
  const std::uint64_t h = token_hash(token);
  const std::size_t mask = table_.size() - 1;
  for (std::size_t i = h & mask;; i = (i + 1) & mask) {
    const Slot& s = table_[i];
    if (s.id == kNone) return kNone;
    if (s.hash != h) continue;
    const std::string& v = vocab_[s.id];
    if (v.size() != token.size()) continue;
    bool equal = true;
    if (case_mode_ == CaseMode::fold) {
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (fold_ascii(token[k]) != v[k]) {
          equal = false;
          break;
        }
      }
    } else {
      equal = v == token;
    }
    if (equal) return s.id;
  }
}

std::uint32_t CompiledMatcher::child(std::uint32_t node, std::uint32_t id) const {
  const auto& ch = nodes_[node].children;
  const auto it = std::lower_bound(
      ch.begin(), ch.end(), id,
      [](const auto& p, std::uint32_t key) { return p.first < key; });
  return (it != ch.end() && it->first == id) ? it->second : kNone;
}

CompiledMatcher::CompiledMatcher(const Lexicon& lexicon)
    : case_mode_(lexicon.case_mode), lexicon_hash_(lexicon.hash()) {
  layout_.diseases = lexicon.names(Dimension::disease);
  layout_.races = lexicon.names(Dimension::race);
  layout_.genders = lexicon.names(Dimension::gender);

  std::array<std::uint32_t, 3> per_dim{};
  for (const auto& cat : lexicon.entries) {
    const auto global = static_cast<std::uint32_t>(categories_.size());
    categories_.push_back(
        {cat.dimension, cat.name, per_dim[static_cast<std::size_t>(cat.dimension)]++});

    std::vector<std::string> texts = cat.terms;
    if (lexicon.match_pronouns && cat.dimension == Dimension::gender) {
      for (const auto& p : pronouns_for(cat.name)) texts.push_back(p);
    }
    std::set<std::vector<std::string>> seen;
    for (const auto& text : texts) {
      auto toks = term_tokens(text, case_mode_);
      if (toks.empty() || !seen.insert(toks).second) continue;
      terms_.push_back({global, text, std::move(toks)});
    }
  }

  // Vocabulary of every token appearing in any term.
  for (const auto& term : terms_)
    for (const auto& tok : term.tokens) intern(tok);

  table_.assign(table_capacity(vocab_.size()), Slot{});
  const std::size_t mask = table_.size() - 1;
  for (std::uint32_t id = 0; id < vocab_.size(); ++id) {
    const auto& v = vocab_[id];
    min_len_ = std::min(min_len_, v.size());
    max_len_ = std::max(max_len_, v.size());
    const std::uint64_t h = fnv1a64(v);
    std::size_t i = h & mask;
    while (table_[i].id != kNone) i = (i + 1) & mask;
    table_[i] = {h, id};
  }

  // Token trie; node 0 is the root.
  nodes_.emplace_back();
  root_child_.assign(vocab_.size(), kNone);
  for (std::uint32_t t = 0; t < terms_.size(); ++t) {
    std::uint32_t node = 0;
    for (std::size_t k = 0; k < terms_[t].tokens.size(); ++k) {
      const std::uint32_t id = intern(terms_[t].tokens[k]);
      std::uint32_t next = k == 0 ? root_child_[id] : child(node, id);
      if (next == kNone) {
        next = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
        if (k == 0) {
          root_child_[id] = next;
        } else {
          auto& ch = nodes_[node].children;
          ch.insert(std::lower_bound(ch.begin(), ch.end(),
                                     std::make_pair(id, std::uint32_t{0})),
                    {id, next});
        }
      }
      node = next;
    }
    nodes_[node].terms.push_back(t);
  }
}

std::vector<MatchHit> CompiledMatcher::find_matches(
    std::span<const Token> tokens) const {
  std::vector<MatchHit> out;
  MatchScratch scratch;
  find_matches(tokens, out, scratch);
  return out;
}

void CompiledMatcher::find_matches(std::span<const Token> tokens,
                                   std::vector<MatchHit>& out,
                                   MatchScratch& scratch) const {
  out.clear();
  const std::size_t n = tokens.size();
  auto& ids = scratch.ids;
  ids.resize(n);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = lookup(tokens[i].text);
    any = any || ids[i] != kNone;
  }
  if (!any) return;

  scratch.next_free.assign(categories_.size(), 0);
  auto& cand = scratch.candidates;

  for (std::size_t i = 0; i < n; ++i) {
    if (ids[i] == kNone) continue;
    std::uint32_t node = root_child_[ids[i]];
    if (node == kNone) continue;

    cand.clear();
    std::size_t k = i;
    while (true) {
      for (std::uint32_t t : nodes_[node].terms) {
        const std::uint32_t cat = terms_[t].category;
        auto it = std::find_if(cand.begin(), cand.end(),
                               [cat](const auto& c) { return c.category == cat; });
        if (it == cand.end()) cand.push_back({cat, t, k});
        else *it = {cat, t, k};  // deeper node: strictly longer
      }
      if (++k >= n || ids[k] == kNone) break;
      node = child(node, ids[k]);
      if (node == kNone) break;
    }

    std::sort(cand.begin(), cand.end(),
              [](const auto& a, const auto& b) { return a.category < b.category; });
    for (const auto& c : cand) {
      if (i < scratch.next_free[c.category]) continue;
      scratch.next_free[c.category] = c.end + 1;
      const auto& info = categories_[c.category];
      out.push_back({info.dimension, info.index_in_dimension, c.term, i, c.end});
    }
  }
}

}  // namespace coaudit
