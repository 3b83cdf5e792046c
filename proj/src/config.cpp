#include "pathweave/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <toml.hpp>
#include <vector>

#include "pathweave/errors.hpp"

#ifndef PATHWEAVE_DATA_DIR
#define PATHWEAVE_DATA_DIR "data"
#endif

namespace pathweave {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("PATHWEAVE_DATA_DIR"); env && *env) return env;
  return PATHWEAVE_DATA_DIR;
}

EngineConfig default_config() {
  EngineConfig cfg;
  const auto dir = data_dir();
  cfg.stopwords = dir / "stopwords.txt";
  cfg.emotion_lexicon = dir / "emotion_lexicon.csv";
  cfg.modifier_lexicon = dir / "modifiers.csv";
  return cfg;
}

void EngineConfig::validate() const {
  std::vector<std::string> problems;
  auto check = [&](bool ok, std::string what) {
    if (!ok) problems.push_back(std::move(what));
  };
  auto guard = [&](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      problems.emplace_back(e.what());
    }
  };
  check(interval > 0, "stream.interval must be positive");
  check(out_of_order_slack >= 0, "stream.out_of_order_slack must be non-negative");
  check(vocabulary_threshold >= 0.0 && vocabulary_threshold < 1.0, "vocabulary.threshold must be in [0, 1)");
  guard([&] { pathways.validate(); });
  guard([&] { events.validate(); });
  check(events.weights.extensions.empty(), "events.weights: only volume, positive and negative are available");
  check(sentiment_scale > 0.0, "emotion.sentiment_scale must be positive");
  check(coherence_terms >= 1, "coherence.top_terms must be at least 1");
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

namespace {

// Reads the keys of one table and rejects any key nobody asked for.
class Section {
 public:
  Section(const toml::table* table, std::string name, std::string_view source)
      : table_(table), name_(std::move(name)), source_(source) {}

  void finish() const {
    if (!table_) return;
    for (const auto& [key, node] : *table_) {
      std::string k(key.str());
      if (!known_.contains(k)) fail(k, "unknown key");
    }
  }

  const toml::node* get(const std::string& key) {
    known_.insert(key);
    return table_ ? table_->get(key) : nullptr;
  }

  void read(const std::string& key, double& out) {
    if (const auto* n = get(key)) {
      if (!n->is_number()) fail(key, "expected a number");
      out = n->value<double>().value();
    }
  }

  void read(const std::string& key, bool& out) {
    if (const auto* n = get(key)) {
      if (!n->is_boolean()) fail(key, "expected true or false");
      out = n->value<bool>().value();
    }
  }

  template <typename Int>
    requires std::is_integral_v<Int>
  void read_int(const std::string& key, Int& out) {
    if (const auto* n = get(key)) {
      if (!n->is_integer()) fail(key, "expected an integer");
      auto v = n->value<std::int64_t>().value();
      if (v < 0) fail(key, "must be non-negative");
      out = static_cast<Int>(v);
    }
  }

  void read(const std::string& key, std::string& out) {
    if (const auto* n = get(key)) {
      if (!n->is_string()) fail(key, "expected a string");
      out = n->value<std::string>().value();
    }
  }

  void read_duration(const std::string& key, Seconds& out) {
    if (const auto* n = get(key)) {
      if (n->is_integer()) {
        out = n->value<std::int64_t>().value();
        return;
      }
      if (!n->is_string()) fail(key, "expected a duration such as \"1d\" or a number of seconds");
      auto d = parse_duration(n->value<std::string>().value());
      if (!d) fail(key, "cannot parse duration \"" + n->value<std::string>().value() + "\"");
      out = *d;
    }
  }

  void read_path(const std::string& key, std::filesystem::path& out, const std::filesystem::path& base) {
    std::string s;
    read(key, s);
    if (s.empty()) return;
    std::filesystem::path p(s);
    out = p.is_absolute() ? p : base / p;
  }

  const toml::table* subtable(const std::string& key) {
    const auto* n = get(key);
    if (!n) return nullptr;
    if (!n->is_table()) fail(key, "expected a table");
    return n->as_table();
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw ConfigError(std::string(source_) + ": " + name_ + "." + key + ": " + why);
  }

 private:
  const toml::table* table_;
  std::string name_;
  std::string_view source_;
  std::set<std::string> known_;
};

}  // namespace

EngineConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
    throw ConfigError(msg.str());
  }

  EngineConfig cfg = default_config();
  Section top(&root, "", source);
  auto table = [&](const std::string& name) -> const toml::table* { return top.subtable(name); };

  {
    Section s(table("stream"), "stream", source);
    s.read_duration("interval", cfg.interval);
    std::string origin;
    s.read("origin", origin);
    if (!origin.empty()) {
      auto t = parse_rfc3339(origin);
      if (!t) s.fail("origin", "expected an RFC 3339 timestamp");
      cfg.origin = *t;
    }
    s.read("sort_on_ingest", cfg.sort_on_ingest);
    s.read_duration("out_of_order_slack", cfg.out_of_order_slack);
    s.finish();
  }
  {
    Section s(table("preprocess"), "preprocess", source);
    s.read_path("stopwords", cfg.stopwords, base_dir);
    s.read("strip_urls", cfg.strip_urls);
    s.read("strip_mentions", cfg.strip_mentions);
    s.read("keep_hashtags", cfg.keep_hashtags);
    s.finish();
  }
  {
    Section s(table("vocabulary"), "vocabulary", source);
    s.read("threshold", cfg.vocabulary_threshold);
    s.finish();
  }
  {
    Section s(table("gsom"), "gsom", source);
    auto& g = cfg.pathways.gsom;
    s.read("learning_rate", g.learning_rate);
    s.read("learning_rate_min", g.learning_rate_min);
    s.read_int("ordering_epochs", g.ordering_epochs);
    s.read_int("smoothing_epochs", g.smoothing_epochs);
    s.read("radius", g.radius);
    s.read("radius_min", g.radius_min);
    s.read("growth_threshold", g.growth_threshold);
    s.read_int("growth_scale_inputs", g.growth_scale_inputs);
    s.read_int("init_terms", g.init_terms);
    s.read("jitter", g.jitter);
    s.finish();
  }
  {
    Section s(table("pathways"), "pathways", source);
    auto& p = cfg.pathways;
    s.read("hit_threshold", p.hit_threshold);
    s.read("topic_threshold", p.topic_threshold);
    s.read("min_new_fraction", p.min_new_fraction);
    s.read_int("max_dormant", p.max_dormant);
    s.read("pool_similarity", p.pool_similarity);
    s.read("merge_similarity", p.merge_similarity);
    s.finish();
  }
  {
    Section s(table("events"), "events", source);
    auto& e = cfg.events;
    s.read_int("window", e.window);
    s.read("threshold", e.threshold);
    std::string cmp;
    s.read("comparison", cmp);
    if (cmp == ">" || cmp == "greater") {
      e.comparison = Comparison::greater;
    } else if (cmp == ">=" || cmp == "greater_equal") {
      e.comparison = Comparison::greater_equal;
    } else if (!cmp.empty()) {
      s.fail("comparison", "expected \">\" or \">=\"");
    }
    s.read("min_volume_fraction", e.min_volume_fraction);
    s.read("zero_history_cap", e.zero_history_cap);
    s.read_int("frequent_terms", e.frequent_terms);
    if (const auto* w = s.subtable("weights")) {
      IndicatorWeights weights{0.0, 0.0, 0.0, {}};
      for (const auto& [key, node] : *w) {
        std::string k(key.str());
        if (!node.is_number()) s.fail("weights." + k, "expected a number");
        double v = node.value<double>().value();
        if (k == "volume") {
          weights.volume = v;
        } else if (k == "positive") {
          weights.positive = v;
        } else if (k == "negative") {
          weights.negative = v;
        } else {
          weights.extensions[k] = v;
        }
      }
      e.weights = weights;
    }
    s.finish();
  }
  {
    Section s(table("emotion"), "emotion", source);
    s.read_path("lexicon", cfg.emotion_lexicon, base_dir);
    s.read_path("modifiers", cfg.modifier_lexicon, base_dir);
    s.read("sentiment_scale", cfg.sentiment_scale);
    s.finish();
  }
  {
    Section s(table("coherence"), "coherence", source);
    s.read_int("top_terms", cfg.coherence_terms);
    std::string scope;
    s.read("scope", scope);
    if (scope == "pathway") {
      cfg.coherence_scope = CoherenceScope::pathway;
    } else if (scope == "corpus") {
      cfg.coherence_scope = CoherenceScope::corpus;
    } else if (!scope.empty()) {
      s.fail("scope", "expected \"pathway\" or \"corpus\"");
    }
    s.finish();
  }
  {
    Section s(table("run"), "run", source);
    s.read_int("seed", cfg.seed);
    s.read_path("out", cfg.out_dir, base_dir);
    s.finish();
  }

  top.finish();
  cfg.pathways.rng_seed = cfg.seed;
  cfg.validate();
  return cfg;
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config(buf.str(), base, path.string());
}

}  // namespace pathweave
