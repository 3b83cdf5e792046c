#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pathweave/time.hpp"

namespace pathweave {

inline constexpr std::size_t kEmotionCount = 16;
inline constexpr std::size_t kPositiveEmotions = 8;
inline constexpr std::size_t kMaxPhraseTokens = 3;

/// Category names in index order: 0-7 positive, 8-15 negative.
const std::array<std::string_view, kEmotionCount>& emotion_names();

/// Case-insensitive lookup of a category name.
std::optional<std::size_t> emotion_index(std::string_view name);

using EmotionSet = std::bitset<kEmotionCount>;

/// Splits a phrase on whitespace, lowercasing it.
std::vector<std::string> phrase_tokens(std::string_view phrase);

/// Term (word or phrase of up to three tokens) to emotion categories.
class EmotionLexicon {
 public:
  void add(std::string_view phrase, std::size_t category);

  /// Categories of a space-joined phrase; empty set when absent.
  EmotionSet categories(const std::string& phrase) const;
  bool contains(const std::string& phrase) const { return terms_.contains(phrase); }

  /// Space-joined phrases of one category, sorted.
  std::vector<std::string> terms_of(std::size_t category) const;

  const std::map<std::string, EmotionSet>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::map<std::string, EmotionSet> terms_;
};

/// Intensity modifiers (boosters, dampeners, negators) with weights in [-1, 1].
class ModifierLexicon {
 public:
  void add(std::string_view phrase, double weight);
  std::optional<double> weight(const std::string& phrase) const;
  bool contains(const std::string& phrase) const { return terms_.contains(phrase); }

  const std::map<std::string, double>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::map<std::string, double> terms_;
};

struct Lexicons {
  EmotionLexicon emotions;
  ModifierLexicon modifiers;
};

/// CSV "term,Category" (emotions) and "term,weight" (modifiers). Blank lines
/// and lines starting with '#' are ignored. Unknown categories and weights
/// outside [-1, 1] throw ConfigError naming the file and line.
EmotionLexicon parse_emotion_lexicon(std::istream& in, std::string_view source = "<stream>");
ModifierLexicon parse_modifier_lexicon(std::istream& in, std::string_view source = "<stream>");
Lexicons load_lexicons(const std::filesystem::path& emotion_file, const std::filesystem::path& modifier_file);

struct EmotionVector {
  std::array<double, kEmotionCount> e{};
  std::size_t token_count = 0;

  bool operator==(const EmotionVector&) const = default;
};

/// Greedy longest-match merge of lexicon phrases (emotion or modifier, up to
/// three tokens) into single space-joined units.
std::vector<std::string> merge_units(std::span<const std::string> tokens, const EmotionLexicon& lex,
                                     const ModifierLexicon& mods);

/// Emotion intensity vector of one post. Each matched unit adds 1 to every
/// category it belongs to, plus the modifier weight of the unit right before
/// it; a unit's contribution never drops below 0. Totals are divided by the
/// merged-unit count, which is also reported as token_count.
EmotionVector score_post(std::span<const std::string> tokens, const EmotionLexicon& lex, const ModifierLexicon& mods);

// --- sentiment adapter ---------------------------------------------------------

/// Positive strength in [1, 4] and negative strength in [-4, -1].
struct SentimentScore {
  double pos = 1.0;
  double neg = -1.0;

  bool operator==(const SentimentScore&) const = default;
};

inline constexpr double kDefaultSentimentScale = 10.0;

SentimentScore sentiment_of(const EmotionVector& ev, double scale = kDefaultSentimentScale);

// --- timeline ------------------------------------------------------------------

struct TimelineBin {
  Instant start = 0;
  std::size_t n_posts = 0;
  std::optional<std::array<double, kEmotionCount>> mean;  // nullopt for an empty bin
};

/// Component-wise mean per fixed-interval bin from the bin of `origin` to the
/// last occupied bin. Posts before `origin` throw std::invalid_argument.
std::vector<TimelineBin> emotion_timeline(std::span<const std::pair<Instant, EmotionVector>> posts, Seconds interval,
                                          Instant origin);

// --- embedding-based lexicon expansion ----------------------------------------

class EmbeddingTable {
 public:
  /// word2vec text format: optional "count dim" header, then "term v1 .. vd".
  static EmbeddingTable parse(std::istream& in);
  static EmbeddingTable load(const std::filesystem::path& path);

  void add(std::string term, std::vector<double> vector);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<double>* find(const std::string& term) const;
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> terms_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ExpansionCandidate {
  std::string category;
  std::string seed;
  std::string term;
  double cosine = 0.0;
};

struct ExpansionResult {
  std::vector<ExpansionCandidate> candidates;
  std::vector<std::pair<std::string, std::string>> skipped;  // (category, seed)
};

/// For each seed present in the embedding, its `k` nearest terms by cosine
/// with cosine >= `min_sim`, excluding the seed and any term already in
/// `existing`. Phrases are looked up with '_' joining their tokens.
ExpansionResult expand_lexicon(const std::map<std::size_t, std::vector<std::string>>& seeds,
                               const EmotionLexicon& existing, const EmbeddingTable& embedding, std::size_t k,
                               double min_sim);

/// Human-review file: candidates then skipped seeds.
void write_expansion_review(std::ostream& out, const ExpansionResult& result);

}  // namespace pathweave
