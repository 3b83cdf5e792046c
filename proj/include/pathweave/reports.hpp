#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pathweave/config.hpp"
#include "pathweave/emotion.hpp"
#include "pathweave/events.hpp"
#include "pathweave/state.hpp"

namespace pathweave {

/// One JSON line per segment, ordered by batch then pathway id.
void write_pathway_report(std::ostream& out, const EngineState& state, std::size_t top_n = 10);

/// One JSON line per flagged event.
void write_event_report(std::ostream& out, std::span<const EventRecord> events);

struct CoherenceRow {
  std::string pathway_id;  // "baseline" for the whole-corpus row
  std::size_t m = 0;
  double coherence = 0.0;
};

/// Per-pathway coherence over each pathway's top-M terms followed by a
/// baseline row over the whole corpus. With CoherenceScope::pathway the
/// document counts come from the pathway's own messages.
std::vector<CoherenceRow> coherence_report(const EngineState& state, std::size_t m, CoherenceScope scope);

void write_coherence_csv(std::ostream& out, std::span<const CoherenceRow> rows);

/// Per-post emotion CSV: id, 16 category columns, token_count.
void write_emotion_header(std::ostream& out);
void write_emotion_row(std::ostream& out, const std::string& id, const EmotionVector& ev);

/// Timeline CSV: bin start, 16 category means ("NA" for empty bins), n_posts.
void write_timeline_csv(std::ostream& out, std::span<const TimelineBin> bins);

/// Regenerates pathways.jsonl and events.jsonl in `out_dir` from `state`.
void write_reports(const std::filesystem::path& out_dir, const EngineState& state, const EngineConfig& cfg);

}  // namespace pathweave
