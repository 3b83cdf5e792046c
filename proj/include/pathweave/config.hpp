#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pathweave/corpus.hpp"
#include "pathweave/events.hpp"
#include "pathweave/pathways.hpp"
#include "pathweave/time.hpp"

namespace pathweave {

enum class CoherenceScope { pathway, corpus };

struct EngineConfig {
  // [stream]
  Seconds interval = 24 * 3600;
  std::optional<Instant> origin;
  bool sort_on_ingest = false;
  Seconds out_of_order_slack = 0;

  // [preprocess]
  std::filesystem::path stopwords;
  bool strip_urls = true;
  bool strip_mentions = true;
  bool keep_hashtags = true;

  // [vocabulary]
  double vocabulary_threshold = 0.005;

  // [gsom], [pathways]
  PathwayConfig pathways;

  // [events]
  EventConfig events;

  // [emotion]
  std::filesystem::path emotion_lexicon;
  std::filesystem::path modifier_lexicon;
  double sentiment_scale = 10.0;

  // [coherence]
  std::size_t coherence_terms = 10;
  CoherenceScope coherence_scope = CoherenceScope::pathway;

  // [run]
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";

  /// Throws ConfigError listing every violated range.
  void validate() const;
};

/// Directory of the shipped lexicons, stopword list and default config.
/// PATHWEAVE_DATA_DIR in the environment overrides the build-time location.
std::filesystem::path data_dir();

/// Defaults with asset paths pointing into data_dir().
EngineConfig default_config();

/// Parses TOML text. Relative paths resolve against `base_dir`. Unknown keys,
/// wrong types and out-of-range values throw ConfigError.
EngineConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir,
                          std::string_view source = "<config>");
EngineConfig load_config(const std::filesystem::path& path);

}  // namespace pathweave
