// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "pathweave/commands.hpp"
#include "pathweave/config.hpp"
#include "pathweave/emotion.hpp"
#include "pathweave/events.hpp"
#include "pathweave/gsom.hpp"
#include "pathweave/pathways.hpp"
#include "pathweave/reports.hpp"
#include "pathweave/similarity.hpp"
#include "pathweave/state.hpp"
#include "synthetic.hpp"

using namespace pathweave;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

int failures = 0;

void report(int number, const std::string& title, double limit_s, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = Outcome{false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0.0 && secs >= limit_s) {
    o.pass = false;
    o.detail += "; over the " + fmt("%.0f", limit_s) + " s limit";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s - %s (%s; %.2f s)\n", number, o.pass ? "PASS" : "FAIL", title.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

// --- 1 ---------------------------------------------------------------------

Outcome emotion_oracle() {
  std::mt19937_64 rng(1001);
  std::vector<std::string> words;
  for (int k = 0; k < 60; ++k) words.push_back("w" + std::to_string(k));
  std::uniform_int_distribution<std::size_t> word(0, words.size() - 1);
  auto phrase = [&] {
    std::string p = words[word(rng)];
    const auto extra = rng() % 6 == 0 ? rng() % 3 : 0;  // some 2- and 3-token phrases
    for (std::size_t k = 0; k < extra; ++k) p += " " + words[word(rng)];
    return p;
  };
  std::uniform_real_distribution<double> weight(-1.0, 1.0);

  std::size_t posts = 0;
  std::size_t mismatches = 0;
  std::size_t with_phrases = 0;
  for (int lexicon = 0; lexicon < 50; ++lexicon) {
    EmotionLexicon lex;
    ModifierLexicon mods;
    std::map<std::string, std::set<int>> th;
    std::map<std::string, double> mw;
    const std::size_t n_terms = 1 + rng() % 50;
    while (th.size() < n_terms) {
      const auto p = phrase();
      const auto c = rng() % kEmotionCount;
      lex.add(p, c);
      th[p].insert(static_cast<int>(c));
    }
    const std::size_t n_mods = rng() % 11;
    while (mw.size() < n_mods) {
      const auto p = phrase();
      if (mw.count(p)) continue;
      const double w = weight(rng);
      mods.add(p, w);
      mw[p] = w;
    }
    for (int k = 0; k < 20; ++k, ++posts) {
      std::vector<std::string> tokens(rng() % 31);
      for (auto& t : tokens) t = words[word(rng)];
      // Plant a few lexicon entries so phrases and modifiers get exercised.
      for (int plant = 0; plant < 3 && !tokens.empty(); ++plant) {
        const auto& src = rng() % 2 ? std::next(th.begin(), rng() % th.size())->first
                                    : (mw.empty() ? th.begin()->first : std::next(mw.begin(), rng() % mw.size())->first);
        auto parts = phrase_tokens(src);
        const auto at = rng() % tokens.size();
        for (std::size_t j = 0; j < parts.size() && at + j < tokens.size(); ++j) tokens[at + j] = parts[j];
      }
      std::size_t units = 0;
      const auto want = testing::naive_emotion_vector(tokens, th, mw, &units);
      const auto got = score_post(tokens, lex, mods);
      if (got.e != want || got.token_count != units) ++mismatches;
      if (units < tokens.size()) ++with_phrases;
    }
  }
  return {mismatches == 0, std::to_string(posts) + " posts, " + std::to_string(with_phrases) +
                               " with merged phrases, " + std::to_string(mismatches) + " mismatches"};
}

// --- 2 ---------------------------------------------------------------------

Outcome cosine_oracle() {
  std::mt19937_64 rng(1002);
  std::bernoulli_distribution keep(0.6);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = testing::random_sparse(rng, 50, 15);
    auto b = testing::random_sparse(rng, 50, 15);
    TermSet shared;
    std::set<std::string> shared_std;
    for (int t = 0; t < 50; ++t) {
      if (!keep(rng)) continue;
      shared.insert("t" + std::to_string(t));
      shared_std.insert("t" + std::to_string(t));
    }
    const double d = std::abs(similarity(a, b, shared) -
                              testing::dense_restricted_cosine(testing::as_map(a), testing::as_map(b), shared_std));
    worst = std::max(worst, d);
  }
  std::size_t disjoint_nonzero = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = testing::random_sparse(rng, 25, 10);
    auto shifted = testing::random_sparse(rng, 25, 10);
    std::vector<SparseVector::Entry> e;
    for (const auto& x : shifted.entries()) e.push_back({"u" + x.term, x.weight});
    SparseVector b(e);
    TermSet all;
    for (const auto& x : a.entries()) all.insert(x.term);
    for (const auto& x : b.entries()) all.insert(x.term);
    if (similarity(a, b, all) != 0.0 || similarity(a, b) != 0.0) ++disjoint_nonzero;
  }
  return {worst <= 1e-9 && disjoint_nonzero == 0,
          "max |diff| " + fmt("%.2e", worst) + " over 1000 pairs; " + std::to_string(disjoint_nonzero) +
              " of 1000 disjoint pairs non-zero"};
}

// --- 3 ---------------------------------------------------------------------

Outcome maxpool_oracle() {
  std::mt19937_64 rng(1003);
  std::size_t checked = 0;
  std::size_t wrong = 0;
  std::vector<Term> pool;
  for (int t = 0; t < 20; ++t) pool.push_back("t" + std::to_string(t));
  for (std::uint64_t seed = 0; checked < 200; ++seed) {
    GsomParams p;
    p.rng_seed = seed;
    p.ordering_epochs = 8;
    p.smoothing_epochs = 2;
    p.growth_threshold = 0.3;
    std::vector<SparseVector> inputs;
    for (int k = 0; k < 80; ++k) inputs.push_back(testing::random_sparse(rng, 20, 6));
    auto map = GsomMap::init(nullptr, p, pool);
    map.train(inputs);
    const auto& nodes = map.nodes();
    const double pool_sim = seed % 2 ? 0.5 : 0.0;
    for (const auto& rep : generalize(map, inputs, 0.02, "x", 0, pool_sim)) {
      // Brute force: scan every node for grid neighbours of the hit node.
      const GsomNode* hit = nullptr;
      for (const auto& n : nodes) {
        if (n.pos == rep.node) hit = &n;
      }
      std::map<std::string, double> want = testing::as_map(hit->weights);
      for (const auto& n : nodes) {
        const int d = std::abs(n.pos.row - rep.node.row) + std::abs(n.pos.col - rep.node.col);
        if (d != 1) continue;
        std::set<std::string> universe;
        for (const auto& e : n.weights.entries()) universe.insert(e.term);
        for (const auto& e : hit->weights.entries()) universe.insert(e.term);
        const double sim =
            testing::dense_restricted_cosine(testing::as_map(n.weights), testing::as_map(hit->weights), universe);
        if (pool_sim > 0.0 && sim < pool_sim) continue;
        for (const auto& e : n.weights.entries()) want[e.term] = std::max(want[e.term], e.weight);
      }
      if (testing::as_map(rep.vector) != want) ++wrong;
      ++checked;
    }
  }
  return {wrong == 0, std::to_string(checked) + " neighbourhoods, " + std::to_string(wrong) + " mismatches"};
}

// --- 4 ---------------------------------------------------------------------

struct Recovery {
  std::size_t distinct = 0;
  double purity = 0.0;
  double before = 0.0;
  double after = 0.0;
  std::string fingerprint;
};

double brute_quantization(const GsomMap& map, const std::vector<SparseVector>& inputs) {
  double total = 0.0;
  for (const auto& v : inputs) {
    double best = 0.0;
    for (const auto& n : map.nodes()) {
      std::set<std::string> universe;
      for (const auto& e : n.weights.entries()) universe.insert(e.term);
      for (const auto& e : v.entries()) universe.insert(e.term);
      best = std::max(best, testing::dense_restricted_cosine(testing::as_map(n.weights), testing::as_map(v), universe));
    }
    total += 1.0 - best;
  }
  return total / static_cast<double>(inputs.size());
}

Recovery recover_cores(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::vector<SparseVector> inputs;
  std::vector<int> label;
  for (int k = 0; k < 400; ++k) {
    const int core = k % 4;
    std::vector<SparseVector::Entry> e;
    for (int t = 0; t < 5; ++t) {
      if (rng() % 4 != 0) e.push_back({"t" + std::to_string(core * 5 + t), weight(rng)});
    }
    if (e.empty()) e.push_back({"t" + std::to_string(core * 5), weight(rng)});
    inputs.emplace_back(std::move(e));
    label.push_back(core);
  }
  std::vector<Term> pool;
  for (int t = 0; t < 20; ++t) pool.push_back("t" + std::to_string(t));
  GsomParams p;
  p.rng_seed = seed;
  auto map = GsomMap::init(nullptr, p, pool);

  Recovery r;
  r.before = brute_quantization(map, inputs);
  map.train(inputs);
  r.after = brute_quantization(map, inputs);

  std::map<std::size_t, std::map<int, std::size_t>> by_node;
  for (std::size_t k = 0; k < inputs.size(); ++k) ++by_node[map.find_winner(inputs[k])][label[k]];
  std::size_t majority_total = 0;
  std::set<std::size_t> core_node;
  std::map<int, std::pair<std::size_t, std::size_t>> best_node;  // core -> (count, node)
  for (const auto& [node, counts] : by_node) {
    std::size_t best = 0;
    for (const auto& [core, c] : counts) {
      best = std::max(best, c);
      if (c > best_node[core].first) best_node[core] = {c, node};
    }
    majority_total += best;
  }
  for (const auto& [core, bn] : best_node) core_node.insert(bn.second);
  r.distinct = best_node.size() == 4 ? core_node.size() : 0;
  r.purity = static_cast<double>(majority_total) / static_cast<double>(inputs.size());
  r.fingerprint = map.to_json().dump();
  return r;
}

Outcome gsom_recovery() {
  const auto a = recover_cores(42);
  const auto b = recover_cores(42);
  const double drop = 1.0 - a.after / a.before;
  const bool ok = a.distinct == 4 && a.purity >= 0.95 && drop >= 0.5 && a.fingerprint == b.fingerprint;
  return {ok, std::to_string(a.distinct) + " distinct core nodes, purity " + fmt("%.3f", a.purity) +
                  ", mean 1-sim " + fmt("%.3f", a.before) + " -> " + fmt("%.3f", a.after) + " (" +
                  fmt("%.0f", drop * 100) + "% drop), " + (a.fingerprint == b.fingerprint ? "deterministic" : "NOT deterministic")};
}

// --- 5, 6, 8: synthetic stream through the command line entry points ------

struct StreamRun {
  fs::path dir;
  testing::PlantedStream stream;
  double seconds = 0.0;
};

int run_cli(const fs::path& input, const fs::path& out, std::uint64_t seed, bool resume = false) {
  RunOptions o;
  o.input = input;
  o.out = out;
  o.seed = seed;
  o.resume = resume;
  return guarded([&] { return cmd_run(o); });
}

StreamRun& stream_run() {
  static StreamRun run = [] {
    StreamRun r;
    r.dir = testing::scratch_dir("acceptance");
    r.stream = testing::make_planted_stream();
    testing::write_jsonl(r.dir / "stream.jsonl", r.stream.messages);
    const auto t0 = std::chrono::steady_clock::now();
    if (run_cli(r.dir / "stream.jsonl", r.dir / "full", 0) != 0) throw std::runtime_error("run failed");
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }();
  return run;
}

Outcome pathway_spawning() {
  auto& r = stream_run();
  const auto state = load_state(r.dir / "full" / "state.json");
  const auto segments = testing::read_segment_report(r.dir / "full" / "pathways.jsonl");
  const auto events = testing::read_event_report(r.dir / "full" / "events.jsonl");

  // (a) Pathways holding at least 30 messages in batches 0-3 whose majority
  // (>= 80%) is one planted topic.
  std::map<std::string, std::map<int, std::size_t>> early;
  std::map<std::string, std::map<int, std::size_t>> ever;
  std::map<std::string, std::size_t> topic1_at_burst;
  for (const auto& d : state.documents) {
    if (d.pathway_id.empty()) continue;
    const int label = r.stream.label.at(d.message_id);
    if (d.batch_index <= 3) ++early[d.pathway_id][label];
    ++ever[d.pathway_id][label];
    if (d.batch_index == 9 && label == 1) ++topic1_at_burst[d.pathway_id];
  }
  std::set<int> pure_topics;
  double worst_purity = 1.0;
  for (const auto& [id, counts] : early) {
    std::size_t total = 0;
    std::pair<int, std::size_t> top{0, 0};
    for (const auto& [label, c] : counts) {
      total += c;
      if (c > top.second) top = {label, c};
    }
    if (total < 30) continue;
    const double purity = static_cast<double>(top.second) / static_cast<double>(total);
    if (top.first != 0 && purity >= 0.8) {
      pure_topics.insert(top.first);
      worst_purity = std::min(worst_purity, purity);
    }
  }
  const bool a = pure_topics.size() >= 3;

  // (b) A pathway born at layer 6 or 7 that is mostly topic 4.
  std::string born;
  for (const auto& p : state.pathways) {
    if (p.birth_layer != 6 && p.birth_layer != 7) continue;
    const auto& counts = ever[p.pathway_id];
    std::size_t total = 0;
    for (const auto& [label, c] : counts) total += c;
    if (total > 0 && counts.count(4) && counts.at(4) * 2 > total) born = p.pathway_id + "@" + std::to_string(p.birth_layer);
  }
  const bool b = !born.empty();

  // (c) The pathway carrying most topic-1 messages at batch 9 is flagged, and
  // the reported indicators match a recomputation from the segment report.
  std::string topic1;
  std::size_t most = 0;
  for (const auto& [id, c] : topic1_at_burst) {
    if (c > most) {
      most = c;
      topic1 = id;
    }
  }
  bool c = false;
  std::string c_detail = "no event for " + (topic1.empty() ? std::string("<none>") : topic1) + " at batch 9";
  for (const auto& e : events) {
    if (e.pathway_id != topic1 || e.batch_index != 9) continue;
    const auto oracle = testing::recompute_indicators(segments, topic1, 9);
    if (!oracle) {
      c_detail = "oracle could not recompute " + topic1;
      break;
    }
    const double diff = std::max({std::abs(oracle->i_v - e.i_v), std::abs(oracle->i_ps - e.i_ps),
                                  std::abs(oracle->i_ns - e.i_ns), std::abs(oracle->score - e.score)});
    c = e.score > 1.0 && oracle->score > 1.0 && oracle->i_v >= 1.5 && diff <= 1e-9;
    c_detail = topic1 + " at batch 9: i_v " + fmt("%.3f", oracle->i_v) + ", i_ps " + fmt("%.3f", oracle->i_ps) +
               ", i_ns " + fmt("%.3f", oracle->i_ns) + ", score " + fmt("%.3f", oracle->score) +
               ", oracle diff " + fmt("%.1e", diff);
  }

  std::string detail = std::string("(a) ") + (a ? "ok" : "FAIL") + ": " + std::to_string(pure_topics.size()) +
                       " topic pathways by batch 3, min purity " + fmt("%.3f", worst_purity) + "; (b) " +
                       (b ? "ok" : "FAIL") + ": " + (born.empty() ? "no topic-4 birth at 6/7" : born) + "; (c) " +
                       (c ? "ok" : "FAIL") + ": " + c_detail + "; run " + fmt("%.2f", r.seconds) + " s";
  return {a && b && c && r.seconds < 60.0, detail};
}

Outcome coherence_gain() {
  auto& r = stream_run();
  const auto state = load_state(r.dir / "full" / "state.json");
  const auto rows = coherence_report(state, 10, CoherenceScope::pathway);
  std::map<std::string, std::size_t> size;
  for (const auto& d : state.documents) {
    if (!d.pathway_id.empty()) ++size[d.pathway_id];
  }
  double baseline = 0.0;
  double sum = 0.0;
  double big_sum = 0.0;
  std::size_t n = 0;
  std::size_t big = 0;
  for (const auto& row : rows) {
    if (row.pathway_id == "baseline") {
      baseline = row.coherence;
      continue;
    }
    sum += row.coherence;
    ++n;
    if (size[row.pathway_id] * 100 >= state.documents.size()) {
      big_sum += row.coherence;
      ++big;
    }
  }
  const double mean = n ? sum / static_cast<double>(n) : -INFINITY;
  return {mean > baseline, "mean over " + std::to_string(n) + " pathways " + fmt("%.3f", mean) + " vs corpus " +
                               fmt("%.3f", baseline) + "; mean over the " + std::to_string(big) +
                               " pathways holding >= 1% of messages " + fmt("%.3f", big ? big_sum / big : 0.0)};
}

Outcome resume_equivalence() {
  auto& r = stream_run();
  std::vector<Message> first;
  std::vector<Message> rest;
  for (const auto& m : r.stream.messages) {
    ((m.timestamp - r.stream.origin) / r.stream.interval < 6 ? first : rest).push_back(m);
  }
  testing::write_jsonl(r.dir / "first.jsonl", first);
  testing::write_jsonl(r.dir / "rest.jsonl", rest);
  if (run_cli(r.dir / "first.jsonl", r.dir / "split", 0) != 0) return {false, "first half failed"};
  if (run_cli(r.dir / "rest.jsonl", r.dir / "split", 0, true) != 0) return {false, "resumed half failed"};
  if (run_cli(r.dir / "stream.jsonl", r.dir / "again", 0) != 0) return {false, "repeat run failed"};
  if (run_cli(r.dir / "stream.jsonl", r.dir / "other", 1) != 0) return {false, "second-seed run failed"};

  std::size_t files = 0;
  std::vector<std::string> split_diff;
  std::vector<std::string> repeat_diff;
  for (const auto& entry : fs::directory_iterator(r.dir / "full")) {
    const auto name = entry.path().filename();
    const auto full = testing::read_file(entry.path());
    ++files;
    if (!fs::exists(r.dir / "split" / name) || testing::read_file(r.dir / "split" / name) != full) {
      split_diff.push_back(name.string());
    }
    if (!fs::exists(r.dir / "again" / name) || testing::read_file(r.dir / "again" / name) != full) {
      repeat_diff.push_back(name.string());
    }
  }
  const bool seeds_differ =
      testing::read_file(r.dir / "other" / "state.json") != testing::read_file(r.dir / "full" / "state.json");
  auto list = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s.empty() ? std::string("none") : s;
  };
  return {split_diff.empty() && repeat_diff.empty() && seeds_differ && files >= 3,
          std::to_string(files) + " output files; split-run differences: " + list(split_diff) +
              "; repeated-seed differences: " + list(repeat_diff) + "; seeds 0 and 1 " +
              (seeds_differ ? "differ" : "DO NOT differ")};
}

// --- 7 ---------------------------------------------------------------------

Outcome steady_state() {
  std::mt19937_64 rng(1007);
  std::uniform_real_distribution<double> vol(0.02, 1.0);
  std::uniform_real_distribution<double> pos(1.0, 4.0);
  std::uniform_real_distribution<double> neg(-4.0, -1.0);
  double worst = 0.0;
  std::size_t records = 0;
  std::size_t flagged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    EventConfig cfg;
    cfg.window = 1 + rng() % 5;
    TopicPathway p;
    p.pathway_id = "tp" + std::to_string(trial);
    const double v = vol(rng);
    const double ps = pos(rng);
    const double ns = neg(rng);
    for (std::size_t b = 0; b < 10; ++b) {
      TopicSegment s;
      s.pathway_id = p.pathway_id;
      s.batch_index = b;
      s.volume_proportion = v;
      s.avg_pos = ps;
      s.avg_neg = ns;
      p.segments.push_back(s);
    }
    std::vector<TopicPathway> ps_list = {p};
    for (const auto& rec : detect(ps_list, cfg)) {
      ++records;
      worst = std::max({worst, std::abs(rec.i_v - 1.0), std::abs(rec.i_ps - 1.0), std::abs(rec.i_ns - 1.0),
                        std::abs(rec.score - 1.0)});
      if (rec.flagged) ++flagged;
    }
  }
  return {worst <= 1e-12 && flagged == 0 && records > 0,
          std::to_string(records) + " records, max |x - 1| " + fmt("%.1e", worst) + ", " + std::to_string(flagged) +
              " flagged"};
}

// --- 9 ---------------------------------------------------------------------

Outcome timeline_invariants() {
  const auto lex = load_lexicons(data_dir() / "emotion_lexicon.csv", data_dir() / "modifiers.csv");
  std::vector<std::string> vocab = {"i", "am", "the", "day", "very", "not", "so", "really", "was", "today"};
  for (const auto& [term, cats] : lex.emotions.terms()) {
    if (term.find(' ') == std::string::npos) vocab.push_back(term);
  }
  std::mt19937_64 rng(1009);
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  const Seconds interval = 3600;
  double worst_perm = 0.0;
  std::size_t single_bins = 0;
  std::size_t single_mismatch = 0;
  std::size_t users = 0;
  for (; users < 100; ++users) {
    std::vector<std::pair<Instant, EmotionVector>> posts;
    const std::size_t n = 1 + rng() % 40;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::string> tokens(1 + rng() % 12);
      for (auto& t : tokens) t = vocab[word(rng)];
      posts.push_back({static_cast<Instant>(rng() % (24 * interval)), score_post(tokens, lex.emotions, lex.modifiers)});
    }
    const auto base = emotion_timeline(posts, interval, 0);
    auto shuffled = posts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto perm = emotion_timeline(shuffled, interval, 0);
    if (perm.size() != base.size()) return {false, "bin count changed under permutation"};
    for (std::size_t b = 0; b < base.size(); ++b) {
      if (base[b].n_posts != perm[b].n_posts || base[b].mean.has_value() != perm[b].mean.has_value()) {
        return {false, "bin occupancy changed under permutation"};
      }
      if (!base[b].mean) continue;
      for (std::size_t i = 0; i < kEmotionCount; ++i) {
        worst_perm = std::max(worst_perm, std::abs((*base[b].mean)[i] - (*perm[b].mean)[i]));
      }
      if (base[b].n_posts == 1) {
        ++single_bins;
        for (const auto& [t, ev] : posts) {
          if (t / interval == static_cast<Instant>(b) && ev.e != *base[b].mean) ++single_mismatch;
        }
      }
    }
  }
  return {worst_perm <= 1e-12 && single_mismatch == 0 && single_bins > 0,
          std::to_string(users) + " users, max permutation diff " + fmt("%.1e", worst_perm) + ", " +
              std::to_string(single_bins) + " single-post bins, " + std::to_string(single_mismatch) + " mismatches"};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  report(1, "emotion scorer equals a direct transcription", 5.0, emotion_oracle);
  report(2, "restricted cosine equals a dense zero-padded cosine", 0.0, cosine_oracle);
  report(3, "pooled representation equals a brute-force maximum", 0.0, maxpool_oracle);
  report(4, "map recovers four disjoint cores", 10.0, gsom_recovery);
  report(5, "planted stream: topic pathways, new-topic birth, burst event", 0.0, pathway_spawning);
  report(6, "pathway coherence exceeds corpus coherence", 0.0, coherence_gain);
  report(7, "steady history scores exactly one without a flag", 0.0, steady_state);
  report(8, "resumed and repeated runs reproduce the reports", 0.0, resume_equivalence);
  report(9, "emotion timeline invariants", 0.0, timeline_invariants);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
