#include "pathweave/pathways.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "pathweave/similarity.hpp"

namespace pathweave {

void PathwayConfig::validate() const {
  gsom.validate();
  if (!(hit_threshold > 0.0 && hit_threshold < 1.0)) throw std::invalid_argument("hit_threshold must be in (0, 1)");
  if (!(topic_threshold >= 0.0 && topic_threshold <= 1.0)) {
    throw std::invalid_argument("topic_threshold must be in [0, 1]");
  }
  if (!(min_new_fraction >= 0.0 && min_new_fraction <= 1.0)) {
    throw std::invalid_argument("min_new_fraction must be in [0, 1]");
  }
  if (!(pool_similarity >= 0.0 && pool_similarity <= 1.0)) {
    throw std::invalid_argument("pool_similarity must be in [0, 1]");
  }
  if (!(merge_similarity >= 0.0 && merge_similarity <= 1.0)) {
    throw std::invalid_argument("merge_similarity must be in [0, 1]");
  }
}

std::string format_pathway_id(std::uint64_t serial) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "tp%04llu", static_cast<unsigned long long>(serial));
  return buf;
}

std::vector<ClusterRep> generalize(const GsomMap& map, std::span<const SparseVector> inputs, double hit_threshold,
                                   const std::string& pathway_id, std::size_t layer, double pool_similarity) {
  if (inputs.empty()) throw std::invalid_argument("generalize needs the inputs the map was trained on");
  const auto& nodes = map.nodes();
  std::vector<std::size_t> hits(nodes.size(), 0);
  for (const auto& v : inputs) ++hits[map.find_winner(v)];

  std::vector<std::size_t> chosen;
  const double n = static_cast<double>(inputs.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (hits[i] > 0 && static_cast<double>(hits[i]) / n >= hit_threshold) chosen.push_back(i);
  }
  if (chosen.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (hits[i] > hits[best] || (hits[i] == hits[best] && nodes[i].pos < nodes[best].pos)) best = i;
    }
    chosen.push_back(best);
  }
  std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
    if (hits[a] != hits[b]) return hits[a] > hits[b];
    return nodes[a].pos < nodes[b].pos;
  });

  static constexpr GridPos kDirections[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  std::vector<ClusterRep> reps;
  reps.reserve(chosen.size());
  for (std::size_t h : chosen) {
    ClusterRep rep;
    rep.layer = layer;
    rep.pathway_id = pathway_id;
    rep.node = nodes[h].pos;
    rep.hits = hits[h];
    rep.pooled.push_back(nodes[h].pos);
    SparseVector pooled = nodes[h].weights;
    for (const auto& d : kDirections) {
      auto nb = map.index_of({nodes[h].pos.row + d.row, nodes[h].pos.col + d.col});
      if (!nb) continue;
      if (pool_similarity > 0.0 && similarity(nodes[*nb].weights, nodes[h].weights) < pool_similarity) continue;
      rep.pooled.push_back(nodes[*nb].pos);
      pooled = elementwise_max(pooled, nodes[*nb].weights);
    }
    pooled.set_vocab_ref(static_cast<std::int64_t>(layer));
    rep.vector = std::move(pooled);
    reps.push_back(std::move(rep));
  }
  return reps;
}

std::vector<std::size_t> route(std::span<const SparseVector> vectors, std::span<const SparseVector> reps,
                               const TermSet& shared, double topic_threshold) {
  std::vector<std::size_t> out(vectors.size(), kRouteNew);
  if (reps.empty()) return out;
  for (std::size_t m = 0; m < vectors.size(); ++m) {
    std::size_t best = 0;
    double best_sim = -1.0;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      double s = similarity(vectors[m], reps[r], shared);
      if (s > best_sim) {
        best_sim = s;
        best = r;
      }
    }
    if (best_sim >= topic_threshold) out[m] = best;
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t map_seed(std::uint64_t base, std::size_t layer, const std::string& label) {
  return splitmix64(splitmix64(base ^ splitmix64(layer)) ^ fnv1a(label));
}

// Reps of one map that resemble each other, pooled into a single candidate
// pathway, and the messages that end up closest to it.
struct Group {
  ClusterRep rep;
  std::vector<SparseVector> parts;   // the reps merged into `rep`
  std::vector<std::size_t> members;  // message indices into the layer input
};

class LayerBuilder {
 public:
  LayerBuilder(const LayerInput& input, const PathwayConfig& cfg, LayerResult& result)
      : in_(input), cfg_(cfg), res_(result) {}

  // Trains a map over `members`, generalizes it and splits `members` among
  // the consolidated reps. Returned groups are non-empty, largest first.
  std::vector<Group> train_groups(const std::vector<std::size_t>& members, const SparseVector* seed,
                                  const std::string& label) {
    std::vector<SparseVector> inputs;
    inputs.reserve(members.size());
    std::set<Term> pool;
    for (std::size_t m : members) {
      inputs.push_back(in_.vectors[m]);
      for (const auto& e : in_.vectors[m].entries()) pool.insert(e.term);
    }
    std::vector<Term> pool_terms(pool.begin(), pool.end());

    GsomParams params = cfg_.gsom;
    params.rng_seed = map_seed(cfg_.rng_seed, in_.batch_index, label);
    GsomMap map = GsomMap::init(seed, params, pool_terms);
    map.train(inputs);
    auto reps = generalize(map, inputs, cfg_.hit_threshold, label, in_.batch_index, cfg_.pool_similarity);
    spdlog::debug("layer {} map '{}': {} inputs, {} nodes, {} hit nodes", in_.batch_index, label, inputs.size(),
                  map.size(), reps.size());

    // A rep joins the group whose member reps it resembles most on average,
    // so a node straddling two topics cannot chain them together.
    std::vector<Group> groups;
    for (auto& rep : reps) {
      Group* target = nullptr;
      double target_sim = -1.0;
      for (auto& g : groups) {
        double total = 0.0;
        for (const auto& part : g.parts) total += similarity(part, rep.vector);
        const double mean = total / static_cast<double>(g.parts.size());
        if (mean >= cfg_.merge_similarity && mean > target_sim) {
          target = &g;
          target_sim = mean;
        }
      }
      if (!target) {
        Group g;
        g.parts.push_back(rep.vector);
        g.rep = std::move(rep);
        groups.push_back(std::move(g));
        continue;
      }
      target->parts.push_back(rep.vector);
      target->rep.vector = elementwise_max(target->rep.vector, rep.vector);
      target->rep.vector.set_vocab_ref(static_cast<std::int64_t>(in_.batch_index));
      target->rep.hits += rep.hits;
      target->rep.pooled.insert(target->rep.pooled.end(), rep.pooled.begin(), rep.pooled.end());
    }

    for (std::size_t m : members) {
      std::size_t best = 0;
      double best_sim = -1.0;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        double s = similarity(in_.vectors[m], groups[g].rep.vector);
        if (s > best_sim) {
          best_sim = s;
          best = g;
        }
      }
      groups[best].members.push_back(m);
    }
    std::erase_if(groups, [](const Group& g) { return g.members.empty(); });
    std::stable_sort(groups.begin(), groups.end(),
                     [](const Group& a, const Group& b) { return a.members.size() > b.members.size(); });
    return groups;
  }

  std::string fresh_id() { return format_pathway_id(res_.state.next_serial++); }

  void emit(const std::string& id, std::size_t birth_layer, Group group) {
    group.rep.pathway_id = id;
    TopicSegment seg;
    seg.pathway_id = id;
    seg.batch_index = in_.batch_index;
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t m : group.members) {
      seg.message_ids.push_back(in_.message_ids[m]);
      res_.assignment[m] = id;
      pos += in_.sentiment[m].pos;
      neg += in_.sentiment[m].neg;
      for (const auto& t : in_.tokens[m]) ++seg.term_freqs[t];
    }
    const double k = static_cast<double>(group.members.size());
    seg.volume_proportion = k / static_cast<double>(in_.message_ids.size());
    seg.avg_pos = pos / k;
    seg.avg_neg = neg / k;
    res_.segments.push_back(std::move(seg));
    res_.state.live.push_back(LivePathway{id, birth_layer, std::move(group.rep), 0});
  }

 private:
  const LayerInput& in_;
  const PathwayConfig& cfg_;
  LayerResult& res_;
};

}  // namespace

LayerResult advance_layer(const LayerInput& input, const LayerState& prior, const PathwayConfig& cfg) {
  cfg.validate();
  const std::size_t n = input.message_ids.size();
  if (input.vectors.size() != n || input.tokens.size() != n || input.sentiment.size() != n) {
    throw std::invalid_argument("layer input columns differ in length");
  }
  if (n > 0 && input.vocab == nullptr) throw std::invalid_argument("layer input lacks its vocabulary");
  if (prior.last_layer && input.batch_index <= *prior.last_layer) {
    throw std::invalid_argument("layer " + std::to_string(input.batch_index) + " does not follow layer " +
                                std::to_string(*prior.last_layer));
  }

  LayerResult res;
  res.state.next_serial = prior.next_serial;
  res.state.last_layer = input.batch_index;
  res.assignment.assign(n, std::string());
  LayerBuilder builder(input, cfg, res);

  // A rep only holds terms of the vocabulary it was built in, so the
  // intersection of that vocabulary with the current one restricts the rep
  // exactly as restricting it to the current vocabulary does.
  TermSet current;
  if (input.vocab) {
    for (const auto& [term, stats] : input.vocab->terms()) current.insert(term);
  }

  std::vector<std::size_t> candidates;
  std::vector<SparseVector> candidate_vectors;
  for (std::size_t m = 0; m < n; ++m) {
    if (input.vectors[m].empty()) continue;
    candidates.push_back(m);
    candidate_vectors.push_back(input.vectors[m]);
  }
  std::vector<SparseVector> rep_vectors;
  rep_vectors.reserve(prior.live.size());
  for (const auto& p : prior.live) rep_vectors.push_back(p.rep.vector);
  const auto routes = route(candidate_vectors, rep_vectors, current, cfg.topic_threshold);

  std::vector<std::vector<std::size_t>> routed(prior.live.size());
  std::vector<std::size_t> new_pool;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (routes[k] == kRouteNew) {
      new_pool.push_back(candidates[k]);
    } else {
      routed[routes[k]].push_back(candidates[k]);
    }
  }

  for (std::size_t p = 0; p < prior.live.size(); ++p) {
    const LivePathway& path = prior.live[p];
    if (routed[p].empty()) {
      LivePathway kept = path;
      ++kept.dormant;
      if (kept.dormant > cfg.max_dormant) {
        res.retired.push_back(path.id);
      } else {
        res.state.live.push_back(std::move(kept));
      }
      continue;
    }
    SparseVector seed = restrict_to(path.rep.vector, current);
    seed.set_vocab_ref(static_cast<std::int64_t>(input.batch_index));
    auto groups = builder.train_groups(routed[p], seed.empty() ? nullptr : &seed, path.id);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (g == 0) {
        builder.emit(path.id, path.birth_layer, std::move(groups[g]));
      } else {
        std::string id = builder.fresh_id();
        res.births.push_back(PathwayBirth{id, input.batch_index, path.id});
        builder.emit(id, input.batch_index, std::move(groups[g]));
      }
    }
  }

  const auto min_new = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(cfg.min_new_fraction * static_cast<double>(n) - 1e-9)));
  if (!new_pool.empty() && new_pool.size() >= min_new) {
    auto groups = builder.train_groups(new_pool, nullptr, "new");
    for (auto& g : groups) {
      std::string id = builder.fresh_id();
      res.births.push_back(PathwayBirth{id, input.batch_index, std::nullopt});
      builder.emit(id, input.batch_index, std::move(g));
    }
  }

  std::sort(res.state.live.begin(), res.state.live.end(), [](const LivePathway& a, const LivePathway& b) {
    if (a.birth_layer != b.birth_layer) return a.birth_layer < b.birth_layer;
    return a.id < b.id;
  });
  std::sort(res.segments.begin(), res.segments.end(),
            [](const TopicSegment& a, const TopicSegment& b) { return a.pathway_id < b.pathway_id; });
  return res;
}

}  // namespace pathweave
