#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathweave/sparse_vector.hpp"
#include "pathweave/time.hpp"

namespace pathweave {

struct Message {
  std::string id;
  std::string text;
  Instant timestamp = 0;
  std::optional<std::string> author;

  bool operator==(const Message&) const = default;
};

/// Messages whose timestamps fall in [start, end).
struct Batch {
  std::size_t index = 0;
  Instant start = 0;
  Instant end = 0;
  std::vector<Message> messages;
};

// --- ingestion ---------------------------------------------------------------

struct IngestResult {
  std::vector<Message> messages;
  std::size_t skipped = 0;
};

/// Parses one JSONL record. On failure returns nullopt and fills `error`.
std::optional<Message> parse_record(std::string_view line, std::string* error = nullptr);

/// Reads line-delimited JSON records in order. Malformed records are logged
/// and counted; blank lines are ignored.
IngestResult ingest(std::istream& in);

/// Throws std::runtime_error when the file cannot be opened.
IngestResult ingest_file(const std::filesystem::path& path);

// --- preprocessing -----------------------------------------------------------

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(const std::vector<std::string>& words);

  /// Plain text, one term per line, '#' starts a comment.
  static StopwordList parse(std::istream& in);
  static StopwordList load(const std::filesystem::path& path);

  bool contains(const std::string& word) const { return words_.contains(word); }
  std::size_t size() const { return words_.size(); }

 private:
  TermSet words_;
};

struct PreprocessConfig {
  StopwordList stopwords;
  bool strip_urls = true;
  bool strip_mentions = true;
  bool keep_hashtags = true;
  bool remove_stopwords = true;

  /// Topic-pathway features: stopwords removed, hashtags kept with '#'.
  static PreprocessConfig pathway_mode(StopwordList stopwords);
  /// Emotion scoring: stopwords kept, hashtags reduced to their word.
  static PreprocessConfig emotion_mode();
};

/// Lowercases, drops URLs (and mentions when configured), splits on
/// whitespace and punctuation, drops standalone numerals. '#' and '@' are kept
/// as token prefixes and apostrophes between word characters stay inside the
/// token. Non-ASCII bytes are treated as word characters.
std::vector<std::string> preprocess(std::string_view text, const PreprocessConfig& cfg);

/// Lowercased text with whitespace runs collapsed and trimmed; the key used
/// for duplicate detection.
std::string normalize_text(std::string_view text);

/// Removes messages whose normalized text repeats an earlier one in the batch.
Batch dedupe(Batch batch);

/// Splits a time-ordered stream into fixed-interval batches starting at
/// `origin`. Empty intervals between the first and last message yield empty
/// batches. A timestamp earlier than its predecessor by more than `slack`
/// seconds, or earlier than `origin`, throws InputError.
std::vector<Batch> partition(std::span<const Message> messages, Seconds interval, Instant origin,
                             Seconds slack = 0);

// --- vocabulary and features -------------------------------------------------

class Vocabulary {
 public:
  struct TermStats {
    std::size_t id = 0;
    std::size_t df = 0;
  };

  Vocabulary() = default;
  Vocabulary(std::size_t batch_index, std::size_t message_count, std::map<Term, std::size_t> doc_freq);

  std::size_t batch_index() const { return batch_index_; }
  std::size_t message_count() const { return message_count_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  bool contains(const Term& term) const { return terms_.contains(term); }
  const TermStats* find(const Term& term) const;
  const std::map<Term, TermStats>& terms() const { return terms_; }

  /// Sorted term list.
  std::vector<Term> term_list() const;

  /// ln(N / (1 + df)), clamped at 0.
  double idf(const Term& term) const;

 private:
  std::size_t batch_index_ = 0;
  std::size_t message_count_ = 0;
  std::map<Term, TermStats> terms_;
};

/// Retains terms present in at least `threshold` of the documents.
Vocabulary build_vocabulary(std::span<const std::vector<std::string>> documents, double threshold,
                            std::size_t batch_index = 0);

/// One entry per distinct in-vocabulary token, weighted by idf. Zero weights
/// are omitted.
SparseVector vectorize(std::span<const std::string> tokens, const Vocabulary& vocab);

}  // namespace pathweave
