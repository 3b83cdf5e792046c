#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathweave/pathways.hpp"
#include "pathweave/time.hpp"

namespace pathweave {

inline constexpr int kStateFormatVersion = 1;

/// Pathway-mode tokens of one processed message, kept for coherence scoring.
struct DocumentRecord {
  std::string message_id;
  std::size_t batch_index = 0;
  std::string pathway_id;  // empty when the message joined no pathway
  std::vector<std::string> tokens;

  bool operator==(const DocumentRecord&) const = default;
};

struct EngineState {
  int format_version = kStateFormatVersion;
  std::optional<Instant> origin;
  Seconds interval = 0;
  std::optional<std::size_t> last_batch;
  LayerState layer;
  std::vector<TopicPathway> pathways;    // every pathway ever born, by id
  std::vector<std::size_t> batch_sizes;  // deduplicated messages per batch index
  std::vector<DocumentRecord> documents;
  std::size_t skipped_records = 0;
};

/// Pretty-printed JSON followed by a "crc32:xxxxxxxx" line covering every
/// byte before it.
std::string serialize_state(const EngineState& state);

/// Throws StateError on a checksum mismatch, truncation, malformed JSON or an
/// unsupported format_version.
EngineState parse_state(std::string_view text);

void save_state(const std::filesystem::path& path, const EngineState& state);
EngineState load_state(const std::filesystem::path& path);

}  // namespace pathweave
