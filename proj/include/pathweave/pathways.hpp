#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathweave/corpus.hpp"
#include "pathweave/emotion.hpp"
#include "pathweave/gsom.hpp"
#include "pathweave/sparse_vector.hpp"

namespace pathweave {

/// Generalized summary of one hit node: the element-wise maximum over the
/// node and the neighbours pooled with it.
struct ClusterRep {
  std::size_t layer = 0;
  std::string pathway_id;
  SparseVector vector;
  GridPos node;
  std::size_t hits = 0;
  std::vector<GridPos> pooled;  // hit node first, then pooled neighbours
};

struct TopicSegment {
  std::string pathway_id;
  std::size_t batch_index = 0;
  std::vector<std::string> message_ids;
  double volume_proportion = 0.0;
  double avg_pos = 1.0;
  double avg_neg = -1.0;
  std::map<Term, std::size_t> term_freqs;
};

struct TopicPathway {
  std::string pathway_id;
  std::size_t birth_layer = 0;
  std::optional<std::string> parent;
  std::vector<TopicSegment> segments;
};

/// Pathway still able to receive messages, with the representation that
/// routes the next batch.
struct LivePathway {
  std::string id;
  std::size_t birth_layer = 0;
  ClusterRep rep;
  std::size_t dormant = 0;  // consecutive layers without messages
};

/// Everything carried from one layer to the next. No raw messages.
struct LayerState {
  std::vector<LivePathway> live;  // ordered by (birth_layer, id)
  std::uint64_t next_serial = 1;
  std::optional<std::size_t> last_layer;
};

struct PathwayConfig {
  GsomParams gsom;
  double hit_threshold = 0.05;    // fraction of a map's inputs a node must win
  double topic_threshold = 0.1;   // minimum similarity to join an existing pathway
  double min_new_fraction = 0.01; // NEW pool size needed to spawn pathways
  std::size_t max_dormant = 3;
  double pool_similarity = 0.5;   // neighbours pooled only when this similar to the hit node
  double merge_similarity = 0.5;  // mean similarity to a group's reps needed to join it
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Hit nodes of a trained map and their pooled representations, ordered by
/// hits (descending) then grid position. A neighbour joins the pool when its
/// similarity to the hit node is at least `pool_similarity`; 0 pools every
/// existing 4-neighbour. When no node reaches `hit_threshold` the node with
/// the most hits is used alone.
std::vector<ClusterRep> generalize(const GsomMap& map, std::span<const SparseVector> inputs, double hit_threshold,
                                   const std::string& pathway_id, std::size_t layer, double pool_similarity = 0.0);

/// Marker for vectors that match no representation.
inline constexpr std::size_t kRouteNew = static_cast<std::size_t>(-1);

/// Index into `reps` of the most similar representation (similarity
/// restricted to `shared`), or kRouteNew when the best similarity is below
/// `topic_threshold` or `reps` is empty. Ties go to the earlier rep, so callers
/// order reps by birth then id.
std::vector<std::size_t> route(std::span<const SparseVector> vectors, std::span<const SparseVector> reps,
                               const TermSet& shared, double topic_threshold);

/// One batch, already deduplicated, vectorized and scored.
struct LayerInput {
  std::size_t batch_index = 0;
  const Vocabulary* vocab = nullptr;
  std::vector<std::string> message_ids;
  std::vector<SparseVector> vectors;
  std::vector<std::vector<std::string>> tokens;  // pathway-mode tokens, for term counts
  std::vector<SentimentScore> sentiment;
};

struct PathwayBirth {
  std::string id;
  std::size_t layer = 0;
  std::optional<std::string> parent;
};

struct LayerResult {
  LayerState state;
  std::vector<TopicSegment> segments;
  std::vector<PathwayBirth> births;
  std::vector<std::string> retired;
  std::vector<std::string> assignment;  // per message: pathway id, empty when unassigned
};

/// Routes a batch against the live pathways, trains one map per receiving
/// pathway plus one for unmatched content, and emits the layer's segments.
LayerResult advance_layer(const LayerInput& input, const LayerState& prior, const PathwayConfig& cfg);

std::string format_pathway_id(std::uint64_t serial);

}  // namespace pathweave
