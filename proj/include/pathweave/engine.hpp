#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "pathweave/config.hpp"
#include "pathweave/corpus.hpp"
#include "pathweave/emotion.hpp"
#include "pathweave/state.hpp"

namespace pathweave {

struct EngineAssets {
  StopwordList stopwords;
  Lexicons lexicons;
};

/// Reads the stopword list and lexicons named by the config. Missing or
/// malformed files throw ConfigError.
EngineAssets load_assets(const EngineConfig& cfg);

/// Drives the per-batch pipeline: dedupe, features, layer advance, emotion
/// scoring and sentiment aggregation. All results accumulate in EngineState.
class Engine {
 public:
  Engine(EngineConfig cfg, EngineAssets assets);

  const EngineConfig& config() const { return cfg_; }
  const PreprocessConfig& pathway_preprocess() const { return pathway_mode_; }
  const PreprocessConfig& emotion_preprocess() const { return emotion_mode_; }

  EmotionVector score(const Message& m) const;

  /// Processes one batch whose index follows state.last_batch.
  void process_batch(EngineState& state, const Batch& batch) const;

  /// Partitions `messages` and processes every batch after state.last_batch.
  /// A fresh state takes its origin from the config, or else from the first
  /// message's interval. Non-empty batches at or before state.last_batch are
  /// skipped with a warning.
  void run(EngineState& state, std::vector<Message> messages) const;

 private:
  EngineConfig cfg_;
  EngineAssets assets_;
  PreprocessConfig pathway_mode_;
  PreprocessConfig emotion_mode_;
};

}  // namespace pathweave
