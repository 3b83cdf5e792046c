#include "pathweave/corpus.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <unordered_set>

#include "pathweave/errors.hpp"

namespace pathweave {

// --- ingestion ---------------------------------------------------------------

std::optional<Message> parse_record(std::string_view line, std::string* error) {
  auto fail = [&](std::string why) -> std::optional<Message> {
    if (error) *error = std::move(why);
    return std::nullopt;
  };
  auto record = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (record.is_discarded()) return fail("not valid JSON");
  if (!record.is_object()) return fail("record is not an object");

  Message msg;
  auto id = record.find("id");
  if (id == record.end()) return fail("missing id");
  if (id->is_string()) {
    msg.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    msg.id = std::to_string(id->get<std::int64_t>());
  } else {
    return fail("id must be a string");
  }
  if (msg.id.empty()) return fail("empty id");

  auto text = record.find("text");
  if (text == record.end() || !text->is_string()) return fail("missing text");
  msg.text = text->get<std::string>();

  auto ts = record.find("timestamp");
  if (ts == record.end() || !ts->is_string()) return fail("missing timestamp");
  auto parsed = parse_rfc3339(ts->get<std::string>());
  if (!parsed) return fail("timestamp is not RFC 3339: " + ts->get<std::string>());
  msg.timestamp = *parsed;

  auto author = record.find("author");
  if (author != record.end() && !author->is_null()) {
    if (!author->is_string()) return fail("author must be a string");
    msg.author = author->get<std::string>();
  }
  return msg;
}

IngestResult ingest(std::istream& in) {
  IngestResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string why;
    if (auto msg = parse_record(line, &why)) {
      result.messages.push_back(std::move(*msg));
    } else {
      ++result.skipped;
      spdlog::warn("input line {}: skipped malformed record ({})", line_no, why);
    }
  }
  if (in.bad()) throw std::runtime_error("error while reading input stream");
  return result;
}

IngestResult ingest_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input: " + path.string());
  return ingest(in);
}

// --- preprocessing -----------------------------------------------------------

StopwordList::StopwordList(const std::vector<std::string>& words) : words_(words.begin(), words.end()) {}

StopwordList StopwordList::parse(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string w = line.substr(b, e - b + 1);
    std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) { return std::tolower(c); });
    words.push_back(std::move(w));
  }
  return StopwordList(words);
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword list: " + path.string());
  return parse(in);
}

PreprocessConfig PreprocessConfig::pathway_mode(StopwordList stopwords) {
  PreprocessConfig cfg;
  cfg.stopwords = std::move(stopwords);
  return cfg;
}

PreprocessConfig PreprocessConfig::emotion_mode() {
  PreprocessConfig cfg;
  cfg.keep_hashtags = false;
  cfg.remove_stopwords = false;
  return cfg;
}

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

bool is_url(std::string_view chunk) {
  return chunk.starts_with("http://") || chunk.starts_with("https://") || chunk.starts_with("www.");
}

bool all_digits(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string lowercase_ascii(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // Right single quotation mark (U+2019) is folded into an ASCII apostrophe.
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 && static_cast<unsigned char>(text[i + 2]) == 0x99) {
      out.push_back('\'');
      i += 2;
      continue;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
  }
  return out;
}

// Splits one whitespace-free chunk into tokens.
void tokenize_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t i = 0;
  while (i < chunk.size()) {
    unsigned char c = static_cast<unsigned char>(chunk[i]);
    bool prefixed = (c == '#' || c == '@') && i + 1 < chunk.size() &&
                    is_word_byte(static_cast<unsigned char>(chunk[i + 1]));
    if (!prefixed && !is_word_byte(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (prefixed) ++i;
    while (i < chunk.size()) {
      unsigned char d = static_cast<unsigned char>(chunk[i]);
      if (is_word_byte(d)) {
        ++i;
      } else if (d == '\'' && i + 1 < chunk.size() && is_word_byte(static_cast<unsigned char>(chunk[i + 1])) &&
                 i > start) {
        ++i;
      } else {
        break;
      }
    }
    out.emplace_back(chunk.substr(start, i - start));
  }
}

}  // namespace

std::vector<std::string> preprocess(std::string_view text, const PreprocessConfig& cfg) {
  std::string lower = lowercase_ascii(text);
  std::vector<std::string> raw;
  std::size_t pos = 0;
  while (pos < lower.size()) {
    while (pos < lower.size() && std::isspace(static_cast<unsigned char>(lower[pos]))) ++pos;
    std::size_t end = pos;
    while (end < lower.size() && !std::isspace(static_cast<unsigned char>(lower[end]))) ++end;
    if (end > pos) {
      std::string_view chunk(lower.data() + pos, end - pos);
      if (!(cfg.strip_urls && is_url(chunk))) tokenize_chunk(chunk, raw);
    }
    pos = end;
  }

  std::vector<std::string> tokens;
  tokens.reserve(raw.size());
  for (auto& tok : raw) {
    if (tok.front() == '@') {
      if (cfg.strip_mentions) continue;
    } else if (tok.front() == '#') {
      if (!cfg.keep_hashtags) tok.erase(0, 1);
    }
    if (all_digits(tok)) continue;
    if (cfg.remove_stopwords && cfg.stopwords.contains(tok)) continue;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::string normalize_text(std::string_view text) {
  std::string lower = lowercase_ascii(text);
  std::string out;
  out.reserve(lower.size());
  bool pending_space = false;
  for (char c : lower) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

Batch dedupe(Batch batch) {
  std::unordered_set<std::string> seen;
  std::vector<Message> kept;
  kept.reserve(batch.messages.size());
  for (auto& m : batch.messages) {
    if (seen.insert(normalize_text(m.text)).second) kept.push_back(std::move(m));
  }
  batch.messages = std::move(kept);
  return batch;
}

std::vector<Batch> partition(std::span<const Message> messages, Seconds interval, Instant origin, Seconds slack) {
  if (interval <= 0) throw std::invalid_argument("batch interval must be positive");
  std::vector<Batch> batches;
  Instant latest = origin;
  for (std::size_t k = 0; k < messages.size(); ++k) {
    const Message& m = messages[k];
    if (m.timestamp < origin) {
      throw InputError("message " + m.id + " precedes the stream origin " + format_rfc3339(origin));
    }
    if (k > 0 && m.timestamp + slack < latest) {
      throw InputError("message " + m.id + " is out of timestamp order (" + format_rfc3339(m.timestamp) +
                       " after " + format_rfc3339(latest) + ")");
    }
    latest = std::max(latest, m.timestamp);
    auto index = static_cast<std::size_t>((m.timestamp - origin) / interval);
    while (batches.size() <= index) {
      Batch b;
      b.index = batches.size();
      b.start = origin + static_cast<Instant>(b.index) * interval;
      b.end = b.start + interval;
      batches.push_back(std::move(b));
    }
    batches[index].messages.push_back(m);
  }
  return batches;
}

// --- vocabulary and features -------------------------------------------------

Vocabulary::Vocabulary(std::size_t batch_index, std::size_t message_count, std::map<Term, std::size_t> doc_freq)
    : batch_index_(batch_index), message_count_(message_count) {
  std::size_t id = 0;
  for (auto& [term, df] : doc_freq) terms_.emplace(term, TermStats{id++, df});
}

const Vocabulary::TermStats* Vocabulary::find(const Term& term) const {
  auto it = terms_.find(term);
  return it == terms_.end() ? nullptr : &it->second;
}

std::vector<Term> Vocabulary::term_list() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [term, stats] : terms_) out.push_back(term);
  return out;
}

double Vocabulary::idf(const Term& term) const {
  const TermStats* s = find(term);
  if (!s || message_count_ == 0) return 0.0;
  double w = std::log(static_cast<double>(message_count_) / (1.0 + static_cast<double>(s->df)));
  return w > 0.0 ? w : 0.0;
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> documents, double threshold,
                            std::size_t batch_index) {
  if (!(threshold >= 0.0 && threshold < 1.0)) throw std::invalid_argument("vocabulary threshold must be in [0, 1)");
  std::map<Term, std::size_t> df;
  for (const auto& doc : documents) {
    std::vector<std::string> distinct(doc.begin(), doc.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto& t : distinct) ++df[t];
  }
  const auto n = static_cast<double>(documents.size());
  std::erase_if(df, [&](const auto& kv) { return static_cast<double>(kv.second) / n < threshold; });
  return Vocabulary(batch_index, documents.size(), std::move(df));
}

SparseVector vectorize(std::span<const std::string> tokens, const Vocabulary& vocab) {
  std::vector<SparseVector::Entry> entries;
  for (const auto& tok : tokens) {
    double w = vocab.idf(tok);
    if (w > 0.0) entries.push_back({tok, w});
  }
  return SparseVector(std::move(entries), static_cast<std::int64_t>(vocab.batch_index()));
}

}  // namespace pathweave
