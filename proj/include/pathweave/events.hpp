#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pathweave/pathways.hpp"

namespace pathweave {

struct IndicatorWeights {
  double volume = 0.1;
  double positive = 0.45;
  double negative = 0.45;
  std::map<std::string, double> extensions;

  /// All weights in [0, 1] summing to 1 (within 1e-9).
  void validate() const;
  std::map<std::string, double> by_name() const;
};

enum class Comparison { greater, greater_equal };

struct EventConfig {
  std::size_t window = 2;
  IndicatorWeights weights;
  double threshold = 1.0;
  Comparison comparison = Comparison::greater;
  double min_volume_fraction = 0.01;
  double zero_history_cap = 10.0;
  std::size_t frequent_terms = 20;

  void validate() const;
};

struct EventRecord {
  std::string pathway_id;
  std::size_t batch_index = 0;
  double i_v = 0.0;
  double i_ps = 0.0;
  double i_ns = 0.0;
  double score = 0.0;
  bool flagged = false;
  std::vector<Term> trigger_terms;
};

/// current * W / sum(history), W = history.size(). A zero history sum gives 0
/// for a zero current value and `cap` otherwise.
double indicator_ratio(std::span<const double> history, double current, double cap = 10.0);

double indicator_volume(std::span<const double> history, double current, double cap = 10.0);

/// Same ratio over magnitudes, so negative-sentiment averages can be passed
/// with their sign.
double indicator_sentiment(std::span<const double> history, double current, double cap = 10.0);

/// Weighted sum of named indicators. Throws std::invalid_argument when the
/// indicator names and weight names differ.
double event_score(const std::map<std::string, double>& indicators, const IndicatorWeights& weights);

/// Scores every segment that has at least W earlier segments in its pathway
/// and enough volume. All evaluated segments are returned; `flagged` marks
/// the events.
std::vector<EventRecord> detect(std::span<const TopicPathway> pathways, const EventConfig& cfg);

}  // namespace pathweave
