#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <nlohmann/json_fwd.hpp>
#include <random>
#include <span>
#include <vector>

#include "pathweave/sparse_vector.hpp"

namespace pathweave {

struct GridPos {
  int row = 0;
  int col = 0;

  auto operator<=>(const GridPos&) const = default;
};

struct GsomParams {
  double learning_rate = 0.3;       // at the first ordering epoch
  double learning_rate_min = 0.05;  // at the last ordering epoch and during smoothing
  int ordering_epochs = 40;
  int smoothing_epochs = 20;
  double radius = 2.0;      // neighbourhood sigma, grid units
  double radius_min = 0.5;
  double growth_threshold = 4.0;
  // Inputs per growth_threshold: train() scales the threshold by
  // max(1, |inputs| / growth_scale_inputs) so map size tracks the share of
  // inputs a node wins rather than their count. 0 keeps the threshold fixed.
  std::size_t growth_scale_inputs = 50;
  std::size_t init_terms = 10;  // terms sampled per node on random initialisation
  double jitter = 0.01;
  std::uint64_t rng_seed = 0;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct GsomNode {
  GridPos pos;
  SparseVector weights;
  double qe = 0.0;
  std::size_t hits = 0;
};

/// Update factor for a node at `grid_distance` from the winner.
double neighborhood_factor(double grid_distance, double alpha, double sigma);

/// Growing self-organising map over sparse term vectors.
///
/// Winner selection uses cosine similarity, ties going to the lowest (row,
/// col). During ordering the winner accumulates 1 - sim as quantisation error
/// and grows into its vacant 4-neighbour cells once the error passes the
/// growth threshold. The error is cleared at the start of every ordering
/// epoch, so growth responds to the load a node carries within one pass.
class GsomMap {
 public:
  /// Without a seed: four nodes at (0,0),(0,1),(1,0),(1,1), each with
  /// uniform [0,1] weights on a random sample of `term_pool`. With a seed:
  /// (0,0) carries the seed and the other three are jittered copies.
  static GsomMap init(const SparseVector* seed, const GsomParams& params, std::span<const Term> term_pool);

  const GsomParams& params() const { return params_; }
  const std::vector<GsomNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  /// Index of the node at `pos`, if any.
  std::optional<std::size_t> index_of(GridPos pos) const;

  /// Index of the most similar node.
  std::size_t find_winner(const SparseVector& v) const;
  double similarity_to(std::size_t node, const SparseVector& v) const;

  double learning_rate_at(int epoch) const;
  double radius_at(int epoch) const;

  /// One ordering-phase presentation: winner search, neighbourhood update,
  /// error accumulation and growth. Requires epoch < ordering_epochs.
  void train_step(const SparseVector& v, int epoch);

  /// Adds nodes at every vacant 4-neighbour of `node` and resets its error to
  /// half the (effective) growth threshold. Returns the number of nodes added.
  std::size_t grow(std::size_t node);

  /// Growth threshold in force; train() sets it from the input count.
  double effective_growth_threshold() const { return growth_threshold_; }

  /// Online ordering with growth, then batch smoothing passes, followed by a
  /// hit-count pass.
  void train(std::span<const SparseVector> inputs);

  /// Recomputes hit counts from a full winner assignment.
  void assign_hits(std::span<const SparseVector> inputs);

  /// Mean of 1 - sim(v, winner) over `inputs`.
  double mean_quantization_error(std::span<const SparseVector> inputs) const;

  /// Replaces a node's weights (used by tests and by seeding logic).
  void set_weights(std::size_t node, SparseVector weights);

  nlohmann::json to_json() const;

 private:
  explicit GsomMap(const GsomParams& params);

  std::size_t add_node(GridPos pos, SparseVector weights);
  void present(const SparseVector& v, double alpha, double sigma, bool accumulate_error, bool allow_growth);
  void smooth_epoch(std::span<const SparseVector> inputs);
  void update_node(GsomNode& node, const SparseVector& v, double factor);

  GsomParams params_;
  double growth_threshold_ = 0.0;
  std::vector<GsomNode> nodes_;
  std::vector<double> norms_;
  std::map<GridPos, std::size_t> index_;
  std::mt19937_64 rng_;
};

}  // namespace pathweave
