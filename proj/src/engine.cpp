#include "pathweave/engine.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "pathweave/errors.hpp"

namespace pathweave {

EngineAssets load_assets(const EngineConfig& cfg) {
  EngineAssets assets;
  std::ifstream in(cfg.stopwords);
  if (!in) throw ConfigError("cannot open stopword list: " + cfg.stopwords.string());
  assets.stopwords = StopwordList::parse(in);
  assets.lexicons = load_lexicons(cfg.emotion_lexicon, cfg.modifier_lexicon);
  return assets;
}

Engine::Engine(EngineConfig cfg, EngineAssets assets)
    : cfg_(std::move(cfg)), assets_(std::move(assets)), emotion_mode_(PreprocessConfig::emotion_mode()) {
  cfg_.validate();
  pathway_mode_ = PreprocessConfig::pathway_mode(assets_.stopwords);
  pathway_mode_.strip_urls = cfg_.strip_urls;
  pathway_mode_.strip_mentions = cfg_.strip_mentions;
  pathway_mode_.keep_hashtags = cfg_.keep_hashtags;
}

EmotionVector Engine::score(const Message& m) const {
  auto tokens = preprocess(m.text, emotion_mode_);
  return score_post(tokens, assets_.lexicons.emotions, assets_.lexicons.modifiers);
}

void Engine::process_batch(EngineState& state, const Batch& raw) const {
  if (state.last_batch && raw.index <= *state.last_batch) {
    throw InputError("batch " + std::to_string(raw.index) + " was already processed");
  }
  const Batch batch = dedupe(raw);
  const std::size_t n = batch.messages.size();

  LayerInput input;
  input.batch_index = batch.index;
  input.message_ids.reserve(n);
  input.tokens.reserve(n);
  input.sentiment.reserve(n);
  for (const auto& m : batch.messages) {
    input.message_ids.push_back(m.id);
    input.tokens.push_back(preprocess(m.text, pathway_mode_));
    input.sentiment.push_back(sentiment_of(score(m), cfg_.sentiment_scale));
  }
  const Vocabulary vocab = build_vocabulary(input.tokens, cfg_.vocabulary_threshold, batch.index);
  input.vocab = &vocab;
  input.vectors.reserve(n);
  for (const auto& t : input.tokens) input.vectors.push_back(vectorize(t, vocab));

  LayerResult res = advance_layer(input, state.layer, cfg_.pathways);
  state.layer = std::move(res.state);

  for (const auto& b : res.births) state.pathways.push_back(TopicPathway{b.id, b.layer, b.parent, {}});
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < state.pathways.size(); ++i) index.emplace(state.pathways[i].pathway_id, i);
  for (auto& seg : res.segments) state.pathways.at(index.at(seg.pathway_id)).segments.push_back(std::move(seg));

  if (state.batch_sizes.size() <= batch.index) state.batch_sizes.resize(batch.index + 1, 0);
  state.batch_sizes[batch.index] = n;
  for (std::size_t m = 0; m < n; ++m) {
    state.documents.push_back(
        DocumentRecord{input.message_ids[m], batch.index, res.assignment[m], std::move(input.tokens[m])});
  }
  state.last_batch = batch.index;

  std::size_t unassigned = std::count(res.assignment.begin(), res.assignment.end(), std::string());
  spdlog::info("batch {}: {} messages ({} duplicates), vocabulary {}, {} segments, {} new pathways, {} retired, "
               "{} unassigned",
               batch.index, n, raw.messages.size() - n, vocab.size(), res.segments.size(), res.births.size(),
               res.retired.size(), unassigned);
}

void Engine::run(EngineState& state, std::vector<Message> messages) const {
  if (cfg_.sort_on_ingest) {
    std::stable_sort(messages.begin(), messages.end(),
                     [](const Message& a, const Message& b) { return a.timestamp < b.timestamp; });
  }
  if (state.origin) {
    if (state.interval != cfg_.interval) {
      throw ConfigError("stream.interval (" + std::to_string(cfg_.interval) + "s) differs from the resumed state (" +
                        std::to_string(state.interval) + "s)");
    }
    if (cfg_.origin && *cfg_.origin != *state.origin) {
      spdlog::warn("stream.origin ignored; the resumed state starts at {}", format_rfc3339(*state.origin));
    }
  }
  if (messages.empty()) return;
  if (!state.origin) {
    state.origin = cfg_.origin ? *cfg_.origin : floor_to_interval(messages.front().timestamp, cfg_.interval);
    state.interval = cfg_.interval;
  }

  const auto batches = partition(messages, state.interval, *state.origin, cfg_.out_of_order_slack);
  for (const auto& b : batches) {
    if (state.last_batch && b.index <= *state.last_batch) {
      if (!b.messages.empty()) {
        spdlog::warn("batch {} was already processed; skipping {} messages", b.index, b.messages.size());
      }
      continue;
    }
    process_batch(state, b);
  }
}

}  // namespace pathweave
