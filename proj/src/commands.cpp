#include "pathweave/commands.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "pathweave/config.hpp"
#include "pathweave/corpus.hpp"
#include "pathweave/emotion.hpp"
#include "pathweave/engine.hpp"
#include "pathweave/errors.hpp"
#include "pathweave/metrics.hpp"
#include "pathweave/reports.hpp"
#include "pathweave/state.hpp"

namespace pathweave {

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("pathweave");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("PATHWEAVE_LOG"); env && *env) {
    auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string_view(env) != "off") {
      spdlog::warn("PATHWEAVE_LOG: unknown level '{}', keeping warn", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const StateError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}

namespace {

EngineConfig config_from(const std::optional<std::filesystem::path>& path) {
  return path ? load_config(*path) : default_config();
}

// Opens `path` for writing, or returns std::cout when no path is given.
class Output {
 public:
  explicit Output(const std::optional<std::filesystem::path>& path) {
    if (!path) return;
    if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
    file_.open(*path, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot write " + path->string());
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int cmd_run(const RunOptions& opts) {
  EngineConfig cfg = config_from(opts.config);
  if (opts.seed) {
    cfg.seed = *opts.seed;
    cfg.pathways.rng_seed = *opts.seed;
  }
  if (opts.out) cfg.out_dir = *opts.out;
  const auto state_path = opts.state.value_or(cfg.out_dir / "state.json");

  Engine engine(cfg, load_assets(cfg));
  EngineState state;
  if (opts.resume) state = load_state(state_path);

  IngestResult input = ingest_file(opts.input);
  state.skipped_records += input.skipped;
  spdlog::info("read {} messages from {} ({} skipped)", input.messages.size(), opts.input.string(), input.skipped);
  engine.run(state, std::move(input.messages));

  save_state(state_path, state);
  write_reports(cfg.out_dir, state, cfg);
  return 0;
}

int cmd_emotions(const EmotionsOptions& opts) {
  EngineConfig cfg = config_from(opts.config);
  Lexicons lex = load_lexicons(cfg.emotion_lexicon, cfg.modifier_lexicon);
  const PreprocessConfig mode = PreprocessConfig::emotion_mode();
  IngestResult input = ingest_file(opts.input);

  std::vector<std::pair<Instant, EmotionVector>> scored;
  scored.reserve(input.messages.size());
  Output out(opts.out);
  write_emotion_header(out.stream());
  for (const auto& m : input.messages) {
    auto ev = score_post(preprocess(m.text, mode), lex.emotions, lex.modifiers);
    write_emotion_row(out.stream(), m.id, ev);
    scored.emplace_back(m.timestamp, ev);
  }

  if (opts.timeline) {
    Instant origin = 0;
    if (cfg.origin) {
      origin = *cfg.origin;
    } else if (!scored.empty()) {
      Instant first = scored.front().first;
      for (const auto& [t, ev] : scored) first = std::min(first, t);
      origin = floor_to_interval(first, cfg.interval);
    }
    auto bins = emotion_timeline(scored, cfg.interval, origin);
    Output tl(opts.timeline);
    write_timeline_csv(tl.stream(), bins);
  }
  return 0;
}

int cmd_lexicon_expand(const ExpandOptions& opts) {
  EngineConfig cfg = config_from(opts.config);
  Lexicons lex = load_lexicons(cfg.emotion_lexicon, cfg.modifier_lexicon);
  if (!(opts.min_sim >= -1.0 && opts.min_sim <= 1.0)) throw ConfigError("--min-sim must be in [-1, 1]");

  std::map<std::size_t, std::vector<std::string>> seeds;
  if (opts.seeds) {
    std::ifstream in(*opts.seeds);
    if (!in) throw ConfigError("cannot open seeds: " + opts.seeds->string());
    EmotionLexicon seed_lex = parse_emotion_lexicon(in, opts.seeds->string());
    for (std::size_t c = 0; c < kEmotionCount; ++c) {
      auto terms = seed_lex.terms_of(c);
      if (!terms.empty()) seeds[c] = std::move(terms);
    }
  } else {
    for (std::size_t c = 0; c < kEmotionCount; ++c) {
      auto terms = lex.emotions.terms_of(c);
      if (!terms.empty()) seeds[c] = std::move(terms);
    }
  }

  EmbeddingTable emb = EmbeddingTable::load(opts.embedding);
  auto result = expand_lexicon(seeds, lex.emotions, emb, opts.k, opts.min_sim);
  Output out(opts.out);
  write_expansion_review(out.stream(), result);
  return 0;
}

int cmd_coherence(const CoherenceOptions& opts) {
  EngineConfig cfg = config_from(opts.config);
  std::size_t m = opts.m.value_or(cfg.coherence_terms);
  if (m < 1) throw ConfigError("--top must be at least 1");
  CoherenceScope scope = cfg.coherence_scope;
  if (opts.scope) {
    if (*opts.scope == "pathway") {
      scope = CoherenceScope::pathway;
    } else if (*opts.scope == "corpus") {
      scope = CoherenceScope::corpus;
    } else {
      throw ConfigError("--scope must be 'pathway' or 'corpus'");
    }
  }
  EngineState state = load_state(opts.state);
  auto rows = coherence_report(state, m, scope);
  Output out(opts.out);
  write_coherence_csv(out.stream(), rows);
  return 0;
}

int cmd_report(const ReportOptions& opts) {
  EngineConfig cfg = config_from(opts.config);
  if (opts.out) cfg.out_dir = *opts.out;
  EngineState state = load_state(opts.state);
  write_reports(cfg.out_dir, state, cfg);
  return 0;
}

}  // namespace pathweave
