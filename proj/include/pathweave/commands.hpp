#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace pathweave {

struct RunOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path input;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> state;  // default: <out>/state.json
  bool resume = false;
  std::optional<std::uint64_t> seed;
};

struct EmotionsOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path input;
  std::optional<std::filesystem::path> out;       // default: stdout
  std::optional<std::filesystem::path> timeline;  // timeline CSV, binned by stream.interval
};

struct ExpandOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path embedding;
  std::optional<std::filesystem::path> seeds;  // "term,Category" CSV; default: the configured lexicon
  std::size_t k = 10;
  double min_sim = 0.5;
  std::optional<std::filesystem::path> out;
};

struct CoherenceOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path state;
  std::optional<std::size_t> m;
  std::optional<std::string> scope;  // "pathway" or "corpus"
  std::optional<std::filesystem::path> out;
};

struct ReportOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path state;
  std::optional<std::filesystem::path> out;
};

int cmd_run(const RunOptions& opts);
int cmd_emotions(const EmotionsOptions& opts);
int cmd_lexicon_expand(const ExpandOptions& opts);
int cmd_coherence(const CoherenceOptions& opts);
int cmd_report(const ReportOptions& opts);

/// Runs `body`, logging any exception: ConfigError and StateError give 2,
/// other failures 1.
int guarded(const std::function<int()>& body);

/// Applies PATHWEAVE_LOG (trace, debug, info, warn, error, off) to a stderr
/// logger; default level is warn.
void configure_logging();

}  // namespace pathweave
