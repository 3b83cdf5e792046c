#include "pathweave/events.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "pathweave/metrics.hpp"

namespace pathweave {

void IndicatorWeights::validate() const {
  double sum = 0.0;
  for (const auto& [name, w] : by_name()) {
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("indicator weight '" + name + "' outside [0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("indicator weights must sum to 1");
}

std::map<std::string, double> IndicatorWeights::by_name() const {
  std::map<std::string, double> out = extensions;
  out["volume"] = volume;
  out["positive"] = positive;
  out["negative"] = negative;
  return out;
}

void EventConfig::validate() const {
  if (window < 1) throw std::invalid_argument("event window must be at least 1");
  weights.validate();
  if (!(threshold >= 0.0)) throw std::invalid_argument("event threshold must be non-negative");
  if (!(min_volume_fraction >= 0.0 && min_volume_fraction <= 1.0)) {
    throw std::invalid_argument("min_volume_fraction must be in [0, 1]");
  }
  if (!(zero_history_cap > 0.0)) throw std::invalid_argument("zero_history_cap must be positive");
}

double indicator_ratio(std::span<const double> history, double current, double cap) {
  if (history.empty()) throw std::invalid_argument("indicator needs a non-empty history");
  double sum = 0.0;
  for (double h : history) sum += h;
  if (sum == 0.0) return current == 0.0 ? 0.0 : cap;
  return current * static_cast<double>(history.size()) / sum;
}

double indicator_volume(std::span<const double> history, double current, double cap) {
  return indicator_ratio(history, current, cap);
}

double indicator_sentiment(std::span<const double> history, double current, double cap) {
  std::vector<double> magnitudes(history.size());
  std::transform(history.begin(), history.end(), magnitudes.begin(), [](double h) { return std::abs(h); });
  return indicator_ratio(magnitudes, std::abs(current), cap);
}

double event_score(const std::map<std::string, double>& indicators, const IndicatorWeights& weights) {
  const auto w = weights.by_name();
  double score = 0.0;
  for (const auto& [name, value] : indicators) {
    auto it = w.find(name);
    if (it == w.end()) throw std::invalid_argument("no weight for indicator '" + name + "'");
    score += it->second * value;
  }
  for (const auto& [name, weight] : w) {
    if (weight != 0.0 && !indicators.contains(name)) {
      throw std::invalid_argument("weighted indicator '" + name + "' was not computed");
    }
  }
  return score;
}

std::vector<EventRecord> detect(std::span<const TopicPathway> pathways, const EventConfig& cfg) {
  cfg.validate();
  const std::size_t w = cfg.window;
  std::vector<EventRecord> out;
  for (const auto& path : pathways) {
    const auto& segs = path.segments;
    for (std::size_t k = w; k < segs.size(); ++k) {
      const TopicSegment& cur = segs[k];
      if (cur.volume_proportion < cfg.min_volume_fraction) continue;

      std::vector<double> vol;
      std::vector<double> pos;
      std::vector<double> neg;
      std::set<Term> prior_frequent;
      for (std::size_t j = k - w; j < k; ++j) {
        vol.push_back(segs[j].volume_proportion);
        pos.push_back(segs[j].avg_pos);
        neg.push_back(segs[j].avg_neg);
        for (auto& t : top_terms(segs[j].term_freqs, cfg.frequent_terms)) prior_frequent.insert(std::move(t));
      }

      EventRecord rec;
      rec.pathway_id = path.pathway_id;
      rec.batch_index = cur.batch_index;
      rec.i_v = indicator_volume(vol, cur.volume_proportion, cfg.zero_history_cap);
      rec.i_ps = indicator_sentiment(pos, cur.avg_pos, cfg.zero_history_cap);
      rec.i_ns = indicator_sentiment(neg, cur.avg_neg, cfg.zero_history_cap);
      std::map<std::string, double> indicators{{"volume", rec.i_v}, {"positive", rec.i_ps}, {"negative", rec.i_ns}};
      rec.score = event_score(indicators, cfg.weights);
      rec.flagged = cfg.comparison == Comparison::greater ? rec.score > cfg.threshold : rec.score >= cfg.threshold;
      for (auto& t : top_terms(cur.term_freqs, cfg.frequent_terms)) {
        if (!prior_frequent.contains(t)) rec.trigger_terms.push_back(std::move(t));
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace pathweave
