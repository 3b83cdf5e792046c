#include "pathweave/emotion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pathweave/errors.hpp"
#include "pathweave/format.hpp"

namespace pathweave {

const std::array<std::string_view, kEmotionCount>& emotion_names() {
  static constexpr std::array<std::string_view, kEmotionCount> names = {
      "Happy", "Good", "Alive",  "Love",  "Positive",  "Open",     "Interested", "Strong",
      "Sad",   "Afraid", "Hurt", "Angry", "Depressed", "Helpless", "Confused",   "Indifferent"};
  return names;
}

std::optional<std::size_t> emotion_index(std::string_view name) {
  const auto& names = emotion_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].size() != name.size()) continue;
    bool same = std::equal(name.begin(), name.end(), names[i].begin(), [](char a, char b) {
      return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
    });
    if (same) return i;
  }
  return std::nullopt;
}

std::vector<std::string> phrase_tokens(std::string_view phrase) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : phrase) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

namespace {

std::string join(std::span<const std::string> parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(' ');
    out += parts[i];
  }
  return out;
}

std::string canonical_phrase(std::string_view phrase) {
  auto toks = phrase_tokens(phrase);
  if (toks.empty()) throw std::invalid_argument("empty lexicon term");
  if (toks.size() > kMaxPhraseTokens) throw std::invalid_argument("lexicon phrase longer than three tokens");
  return join(toks);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Splits "term,field" at the last comma.
bool split_csv_line(const std::string& line, std::string& term, std::string& field) {
  auto comma = line.rfind(',');
  if (comma == std::string::npos) return false;
  term = trim(std::string_view(line).substr(0, comma));
  field = trim(std::string_view(line).substr(comma + 1));
  return !term.empty() && !field.empty();
}

[[noreturn]] void lexicon_error(std::string_view source, std::size_t line_no, const std::string& what) {
  throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

void EmotionLexicon::add(std::string_view phrase, std::size_t category) {
  if (category >= kEmotionCount) throw std::out_of_range("emotion category index");
  terms_[canonical_phrase(phrase)].set(category);
}

EmotionSet EmotionLexicon::categories(const std::string& phrase) const {
  auto it = terms_.find(phrase);
  return it == terms_.end() ? EmotionSet{} : it->second;
}

std::vector<std::string> EmotionLexicon::terms_of(std::size_t category) const {
  std::vector<std::string> out;
  for (const auto& [term, cats] : terms_) {
    if (cats.test(category)) out.push_back(term);
  }
  return out;
}

void ModifierLexicon::add(std::string_view phrase, double weight) {
  if (!(weight >= -1.0 && weight <= 1.0)) throw std::out_of_range("modifier weight outside [-1, 1]");
  terms_[canonical_phrase(phrase)] = weight;
}

std::optional<double> ModifierLexicon::weight(const std::string& phrase) const {
  auto it = terms_.find(phrase);
  if (it == terms_.end()) return std::nullopt;
  return it->second;
}

EmotionLexicon parse_emotion_lexicon(std::istream& in, std::string_view source) {
  EmotionLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string term;
    std::string category;
    if (!split_csv_line(t, term, category)) lexicon_error(source, line_no, "expected \"term,Category\"");
    auto idx = emotion_index(category);
    if (!idx) lexicon_error(source, line_no, "unknown emotion category \"" + category + "\"");
    try {
      lex.add(term, *idx);
    } catch (const std::exception& e) {
      lexicon_error(source, line_no, e.what());
    }
  }
  return lex;
}

ModifierLexicon parse_modifier_lexicon(std::istream& in, std::string_view source) {
  ModifierLexicon mods;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string term;
    std::string field;
    if (!split_csv_line(t, term, field)) lexicon_error(source, line_no, "expected \"term,weight\"");
    double w = 0.0;
    auto r = std::from_chars(field.data(), field.data() + field.size(), w);
    if (r.ec != std::errc{} || r.ptr != field.data() + field.size()) {
      lexicon_error(source, line_no, "weight is not a number: " + field);
    }
    if (!(w >= -1.0 && w <= 1.0)) lexicon_error(source, line_no, "weight outside [-1, 1]: " + field);
    try {
      mods.add(term, w);
    } catch (const std::exception& e) {
      lexicon_error(source, line_no, e.what());
    }
  }
  return mods;
}

Lexicons load_lexicons(const std::filesystem::path& emotion_file, const std::filesystem::path& modifier_file) {
  std::ifstream ein(emotion_file);
  if (!ein) throw ConfigError("cannot open emotion lexicon: " + emotion_file.string());
  std::ifstream min(modifier_file);
  if (!min) throw ConfigError("cannot open modifier lexicon: " + modifier_file.string());
  return Lexicons{parse_emotion_lexicon(ein, emotion_file.string()), parse_modifier_lexicon(min, modifier_file.string())};
}

std::vector<std::string> merge_units(std::span<const std::string> tokens, const EmotionLexicon& lex,
                                     const ModifierLexicon& mods) {
  std::vector<std::string> units;
  units.reserve(tokens.size());
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t taken = 1;
    for (std::size_t len = std::min(kMaxPhraseTokens, tokens.size() - i); len >= 2; --len) {
      std::string phrase = join(tokens.subspan(i, len));
      if (lex.contains(phrase) || mods.contains(phrase)) {
        units.push_back(std::move(phrase));
        taken = len;
        break;
      }
    }
    if (taken == 1) units.push_back(tokens[i]);
    i += taken;
  }
  return units;
}

EmotionVector score_post(std::span<const std::string> tokens, const EmotionLexicon& lex, const ModifierLexicon& mods) {
  EmotionVector out;
  const auto units = merge_units(tokens, lex, mods);
  out.token_count = units.size();
  if (units.empty()) return out;

  for (std::size_t u = 0; u < units.size(); ++u) {
    EmotionSet cats = lex.categories(units[u]);
    if (cats.none()) continue;
    double contribution = 1.0;
    if (u > 0) {
      if (auto m = mods.weight(units[u - 1])) contribution += *m;
    }
    contribution = std::max(0.0, contribution);
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
      if (cats.test(i)) out.e[i] += contribution;
    }
  }
  const double n = static_cast<double>(units.size());
  for (auto& v : out.e) v /= n;
  return out;
}

SentimentScore sentiment_of(const EmotionVector& ev, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("sentiment scale must be positive");
  double p = 0.0;
  double n = 0.0;
  for (std::size_t i = 0; i < kEmotionCount; ++i) (i < kPositiveEmotions ? p : n) += ev.e[i];
  return SentimentScore{1.0 + 3.0 * std::min(1.0, scale * p), -(1.0 + 3.0 * std::min(1.0, scale * n))};
}

std::vector<TimelineBin> emotion_timeline(std::span<const std::pair<Instant, EmotionVector>> posts, Seconds interval,
                                          Instant origin) {
  if (interval <= 0) throw std::invalid_argument("timeline interval must be positive");
  std::vector<TimelineBin> bins;
  std::vector<std::array<double, kEmotionCount>> sums;
  for (const auto& [t, ev] : posts) {
    if (t < origin) throw std::invalid_argument("post precedes timeline origin");
    auto idx = static_cast<std::size_t>((t - origin) / interval);
    while (bins.size() <= idx) {
      TimelineBin b;
      b.start = origin + static_cast<Instant>(bins.size()) * interval;
      bins.push_back(b);
      sums.emplace_back();
    }
    ++bins[idx].n_posts;
    for (std::size_t i = 0; i < kEmotionCount; ++i) sums[idx][i] += ev.e[i];
  }
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (bins[b].n_posts == 0) continue;
    std::array<double, kEmotionCount> mean{};
    for (std::size_t i = 0; i < kEmotionCount; ++i) mean[i] = sums[b][i] / static_cast<double>(bins[b].n_posts);
    bins[b].mean = mean;
  }
  return bins;
}

// --- embeddings ------------------------------------------------------------------

void EmbeddingTable::add(std::string term, std::vector<double> vector) {
  if (terms_.empty() && dim_ == 0) dim_ = vector.size();
  if (vector.size() != dim_ || dim_ == 0) throw std::invalid_argument("embedding vector has wrong dimension: " + term);
  if (index_.contains(term)) return;
  index_.emplace(term, terms_.size());
  terms_.push_back(std::move(term));
  vectors_.push_back(std::move(vector));
}

const std::vector<double>* EmbeddingTable::find(const std::string& term) const {
  auto it = index_.find(term);
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

EmbeddingTable EmbeddingTable::parse(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string term;
    if (!(fields >> term)) continue;
    std::vector<double> values;
    double v = 0.0;
    while (fields >> v) values.push_back(v);
    if (line_no == 1 && values.size() == 1) {
      // "count dim" header
      table.dim_ = static_cast<std::size_t>(values[0]);
      continue;
    }
    if (values.empty()) throw ConfigError("embedding line " + std::to_string(line_no) + " has no vector");
    if (table.dim_ != 0 && values.size() != table.dim_) {
      throw ConfigError("embedding line " + std::to_string(line_no) + " has " + std::to_string(values.size()) +
                        " values, expected " + std::to_string(table.dim_));
    }
    table.add(std::move(term), std::move(values));
  }
  return table;
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open embedding: " + path.string());
  return parse(in);
}

namespace {

double dense_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::string embedding_key(const std::string& phrase) {
  std::string key = phrase;
  std::replace(key.begin(), key.end(), ' ', '_');
  return key;
}

std::string lexicon_key(const std::string& embedding_term) {
  std::string key = embedding_term;
  std::replace(key.begin(), key.end(), '_', ' ');
  return join(phrase_tokens(key));
}

}  // namespace

ExpansionResult expand_lexicon(const std::map<std::size_t, std::vector<std::string>>& seeds,
                               const EmotionLexicon& existing, const EmbeddingTable& embedding, std::size_t k,
                               double min_sim) {
  ExpansionResult result;
  const auto& names = emotion_names();
  std::vector<double> norms;
  norms.reserve(embedding.size());
  for (const auto& t : embedding.terms()) norms.push_back(dense_norm(*embedding.find(t)));

  for (const auto& [category, terms] : seeds) {
    const std::string cat_name(names.at(category));
    for (const auto& seed : terms) {
      const std::string key = embedding_key(seed);
      const std::vector<double>* sv = embedding.find(key);
      if (!sv) {
        result.skipped.emplace_back(cat_name, seed);
        continue;
      }
      if (k == 0) continue;
      const double sn = dense_norm(*sv);
      std::vector<std::pair<double, std::size_t>> scored;
      for (std::size_t j = 0; j < embedding.size(); ++j) {
        const std::string& term = embedding.terms()[j];
        if (term == key) continue;
        const std::string lk = lexicon_key(term);
        if (lk.empty() || lk == seed || existing.contains(lk)) continue;
        if (sn == 0.0 || norms[j] == 0.0) continue;
        const auto& tv = *embedding.find(term);
        double d = 0.0;
        for (std::size_t x = 0; x < tv.size(); ++x) d += tv[x] * (*sv)[x];
        double c = d / (sn * norms[j]);
        if (c >= min_sim) scored.emplace_back(c, j);
      }
      std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return embedding.terms()[a.second] < embedding.terms()[b.second];
      });
      if (scored.size() > k) scored.resize(k);
      for (const auto& [c, j] : scored) {
        result.candidates.push_back({cat_name, seed, lexicon_key(embedding.terms()[j]), c});
      }
    }
  }
  return result;
}

void write_expansion_review(std::ostream& out, const ExpansionResult& result) {
  out << "# Candidate emotion terms for manual review; nothing here is merged automatically.\n";
  out << "# category,seed,candidate,cosine\n";
  for (const auto& c : result.candidates) {
    out << c.category << ',' << c.seed << ',' << c.term << ',' << format_double(c.cosine) << '\n';
  }
  out << "# skipped seeds (absent from the embedding): category,seed\n";
  for (const auto& [cat, seed] : result.skipped) out << "# skipped," << cat << ',' << seed << '\n';
}

}  // namespace pathweave
