#include "pathweave/gsom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>

#include "pathweave/similarity.hpp"

namespace pathweave {

void GsomParams::validate() const {
  if (!(learning_rate_min > 0.0 && learning_rate_min <= learning_rate && learning_rate <= 1.0)) {
    throw std::invalid_argument("gsom learning rates must satisfy 0 < min <= initial <= 1");
  }
  if (ordering_epochs < 1) throw std::invalid_argument("gsom ordering_epochs must be positive");
  if (smoothing_epochs < 0) throw std::invalid_argument("gsom smoothing_epochs must be non-negative");
  if (!(radius_min >= 0.0 && radius_min <= radius)) {
    throw std::invalid_argument("gsom radii must satisfy 0 <= min <= initial");
  }
  if (!(growth_threshold > 0.0)) throw std::invalid_argument("gsom growth_threshold must be positive");
  if (init_terms < 1) throw std::invalid_argument("gsom init_terms must be positive");
  if (!(jitter >= 0.0)) throw std::invalid_argument("gsom jitter must be non-negative");
}

double neighborhood_factor(double grid_distance, double alpha, double sigma) {
  if (grid_distance == 0.0) return alpha;
  if (sigma <= 0.0 || grid_distance > sigma) return 0.0;
  return alpha * std::exp(-(grid_distance * grid_distance) / (2.0 * sigma * sigma));
}

GsomMap::GsomMap(const GsomParams& params)
    : params_(params), growth_threshold_(params.growth_threshold), rng_(params.rng_seed) {}

GsomMap GsomMap::init(const SparseVector* seed, const GsomParams& params, std::span<const Term> term_pool) {
  params.validate();
  GsomMap map(params);
  const GridPos start[4] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  if (seed != nullptr) {
    std::uniform_real_distribution<double> jitter(-params.jitter, params.jitter);
    map.add_node(start[0], *seed);
    for (int k = 1; k < 4; ++k) {
      std::vector<SparseVector::Entry> entries;
      entries.reserve(seed->size());
      for (const auto& e : seed->entries()) entries.push_back({e.term, std::max(0.0, e.weight + jitter(map.rng_))});
      map.add_node(start[k], SparseVector(std::move(entries), seed->vocab_ref()));
    }
    return map;
  }

  std::vector<Term> pool(term_pool.begin(), term_pool.end());
  const std::size_t sample = std::min(params.init_terms, pool.size());
  for (const auto& pos : start) {
    // Partial Fisher-Yates: the first `sample` slots become the draw.
    for (std::size_t i = 0; i < sample; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(map.rng_)]);
    }
    std::vector<SparseVector::Entry> entries;
    entries.reserve(sample);
    for (std::size_t i = 0; i < sample; ++i) entries.push_back({pool[i], unit(map.rng_)});
    map.add_node(pos, SparseVector(std::move(entries)));
  }
  return map;
}

std::size_t GsomMap::add_node(GridPos pos, SparseVector weights) {
  if (index_.contains(pos)) throw std::logic_error("gsom grid position already occupied");
  std::size_t idx = nodes_.size();
  norms_.push_back(weights.norm());
  nodes_.push_back(GsomNode{pos, std::move(weights), 0.0, 0});
  index_.emplace(pos, idx);
  return idx;
}

std::optional<std::size_t> GsomMap::index_of(GridPos pos) const {
  auto it = index_.find(pos);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double GsomMap::similarity_to(std::size_t node, const SparseVector& v) const {
  double d = dot(v, nodes_[node].weights);
  if (d == 0.0) return 0.0;
  return cosine(d, v.norm(), norms_[node]);
}

std::size_t GsomMap::find_winner(const SparseVector& v) const {
  if (nodes_.empty()) throw std::logic_error("find_winner on an empty map");
  const double vn = v.norm();
  std::size_t best = 0;
  double best_sim = -1.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    double d = dot(v, nodes_[i].weights);
    double s = d == 0.0 ? 0.0 : cosine(d, vn, norms_[i]);
    if (s > best_sim || (s == best_sim && nodes_[i].pos < nodes_[best].pos)) {
      best = i;
      best_sim = s;
    }
  }
  return best;
}

namespace {

double linear_schedule(double from, double to, int epoch, int epochs) {
  if (epochs <= 1) return from;
  double t = static_cast<double>(epoch) / static_cast<double>(epochs - 1);
  return from + (to - from) * t;
}

}  // namespace

double GsomMap::learning_rate_at(int epoch) const {
  return linear_schedule(params_.learning_rate, params_.learning_rate_min, epoch, params_.ordering_epochs);
}

double GsomMap::radius_at(int epoch) const {
  return linear_schedule(params_.radius, params_.radius_min, epoch, params_.ordering_epochs);
}

void GsomMap::update_node(GsomNode& node, const SparseVector& v, double f) {
  // w <- w + f (v - w) over the union of active terms; terms outside the
  // union are zero on both sides and stay absent.
  const auto& w = node.weights.entries();
  const auto& x = v.entries();
  std::vector<SparseVector::Entry> out;
  out.reserve(w.size() + x.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < w.size() || j < x.size()) {
    if (j == x.size() || (i < w.size() && w[i].term < x[j].term)) {
      out.push_back({w[i].term, w[i].weight - f * w[i].weight});
      ++i;
    } else if (i == w.size() || x[j].term < w[i].term) {
      out.push_back({x[j].term, f * x[j].weight});
      ++j;
    } else {
      out.push_back({w[i].term, w[i].weight + f * (x[j].weight - w[i].weight)});
      ++i;
      ++j;
    }
  }
  for (auto& e : out) e.weight = std::max(0.0, e.weight);
  node.weights = SparseVector(std::move(out), node.weights.vocab_ref());
}

void GsomMap::present(const SparseVector& v, double alpha, double sigma, bool accumulate_error, bool allow_growth) {
  const std::size_t winner = find_winner(v);
  if (accumulate_error) nodes_[winner].qe += 1.0 - similarity_to(winner, v);

  if (alpha > 0.0) {
    const GridPos wp = nodes_[winner].pos;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      double dr = nodes_[i].pos.row - wp.row;
      double dc = nodes_[i].pos.col - wp.col;
      double f = neighborhood_factor(std::sqrt(dr * dr + dc * dc), alpha, sigma);
      if (f <= 0.0) continue;
      update_node(nodes_[i], v, f);
      norms_[i] = nodes_[i].weights.norm();
    }
  }

  if (allow_growth && nodes_[winner].qe > growth_threshold_) grow(winner);
}

void GsomMap::train_step(const SparseVector& v, int epoch) {
  if (epoch < 0 || epoch >= params_.ordering_epochs) throw std::out_of_range("train_step epoch out of range");
  present(v, learning_rate_at(epoch), radius_at(epoch), true, true);
}

std::size_t GsomMap::grow(std::size_t node) {
  static constexpr GridPos kDirections[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  const GridPos origin = nodes_.at(node).pos;
  const SparseVector parent = nodes_[node].weights;
  std::uniform_real_distribution<double> jitter(-params_.jitter, params_.jitter);

  std::size_t added = 0;
  for (const auto& dir : kDirections) {
    GridPos target{origin.row + dir.row, origin.col + dir.col};
    if (index_.contains(target)) continue;
    GridPos opposite{origin.row - dir.row, origin.col - dir.col};

    std::vector<SparseVector::Entry> entries;
    if (auto opp = index_of(opposite)) {
      // Linear extrapolation away from the opposite neighbour: 2 w_node - w_opp.
      const SparseVector& other = nodes_[*opp].weights;
      const auto& a = parent.entries();
      const auto& b = other.entries();
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].term < b[j].term)) {
          entries.push_back({a[i].term, 2.0 * a[i].weight});
          ++i;
        } else if (i == a.size() || b[j].term < a[i].term) {
          ++j;  // 0 - w_opp is negative, clamped away
        } else {
          entries.push_back({a[i].term, std::max(0.0, 2.0 * a[i].weight - b[j].weight)});
          ++i;
          ++j;
        }
      }
    } else {
      for (const auto& e : parent.entries()) entries.push_back({e.term, std::max(0.0, e.weight + jitter(rng_))});
    }
    add_node(target, SparseVector(std::move(entries), parent.vocab_ref()));
    ++added;
  }
  nodes_[node].qe = growth_threshold_ / 2.0;
  return added;
}

void GsomMap::train(std::span<const SparseVector> inputs) {
  if (inputs.empty()) throw std::invalid_argument("gsom train needs at least one input");
  std::vector<std::size_t> order(inputs.size());
  std::iota(order.begin(), order.end(), 0);
  growth_threshold_ = params_.growth_threshold;
  if (params_.growth_scale_inputs > 0 && inputs.size() > params_.growth_scale_inputs) {
    growth_threshold_ *= static_cast<double>(inputs.size()) / static_cast<double>(params_.growth_scale_inputs);
  }

  for (int epoch = 0; epoch < params_.ordering_epochs; ++epoch) {
    for (auto& n : nodes_) n.qe = 0.0;
    std::shuffle(order.begin(), order.end(), rng_);
    for (std::size_t k : order) train_step(inputs[k], epoch);
  }
  for (int epoch = 0; epoch < params_.smoothing_epochs; ++epoch) smooth_epoch(inputs);
  assign_hits(inputs);
}

void GsomMap::smooth_epoch(std::span<const SparseVector> inputs) {
  // Batch pass: every node moves by learning_rate_min toward the direction of
  // the neighbourhood-weighted sum of the unit-length inputs it (or a grid
  // neighbour) won. With a winner-only neighbourhood this cannot lower any
  // node's summed cosine to its inputs, so the mean error never rises.
  std::vector<std::map<Term, double>> targets(nodes_.size());
  for (const auto& v : inputs) {
    const double norm = v.norm();
    if (norm == 0.0) continue;
    const GridPos wp = nodes_[find_winner(v)].pos;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double dr = nodes_[i].pos.row - wp.row;
      const double dc = nodes_[i].pos.col - wp.col;
      const double h = neighborhood_factor(std::sqrt(dr * dr + dc * dc), 1.0, params_.radius_min);
      if (h <= 0.0) continue;
      for (const auto& e : v.entries()) targets[i][e.term] += h * e.weight / norm;
    }
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (targets[i].empty() || norms_[i] == 0.0) continue;
    double tn = 0.0;
    for (const auto& [t, w] : targets[i]) tn += w * w;
    tn = std::sqrt(tn);
    std::vector<SparseVector::Entry> entries;
    entries.reserve(targets[i].size());
    for (const auto& [t, w] : targets[i]) entries.push_back({t, w * norms_[i] / tn});
    update_node(nodes_[i], SparseVector(std::move(entries)), params_.learning_rate_min);
    norms_[i] = nodes_[i].weights.norm();
  }
}

void GsomMap::assign_hits(std::span<const SparseVector> inputs) {
  for (auto& n : nodes_) n.hits = 0;
  for (const auto& v : inputs) ++nodes_[find_winner(v)].hits;
}

double GsomMap::mean_quantization_error(std::span<const SparseVector> inputs) const {
  if (inputs.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& v : inputs) sum += 1.0 - similarity_to(find_winner(v), v);
  return sum / static_cast<double>(inputs.size());
}

void GsomMap::set_weights(std::size_t node, SparseVector weights) {
  norms_.at(node) = weights.norm();
  nodes_[node].weights = std::move(weights);
}

nlohmann::json GsomMap::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : nodes_) {
    nlohmann::json weights = nlohmann::json::array();
    for (const auto& e : n.weights.entries()) weights.push_back({e.term, e.weight});
    nodes.push_back({{"row", n.pos.row}, {"col", n.pos.col}, {"qe", n.qe}, {"hits", n.hits}, {"weights", weights}});
  }
  return {{"nodes", nodes}};
}

}  // namespace pathweave
