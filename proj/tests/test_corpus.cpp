#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "pathweave/config.hpp"
#include "pathweave/corpus.hpp"
#include "pathweave/errors.hpp"

using namespace pathweave;

namespace {

Message msg(std::string id, std::string text, Instant t = 0) { return Message{std::move(id), std::move(text), t, {}}; }

std::vector<std::string> tokens(std::initializer_list<const char*> words) {
  return std::vector<std::string>(words.begin(), words.end());
}

}  // namespace

TEST_CASE("ingest maps record fields") {
  std::istringstream in(R"({"id":"1","text":"hi","timestamp":"2015-01-01T00:00:00Z"})");
  auto r = ingest(in);
  REQUIRE(r.messages.size() == 1);
  CHECK(r.skipped == 0);
  CHECK(r.messages[0].id == "1");
  CHECK(r.messages[0].text == "hi");
  CHECK(r.messages[0].timestamp == 1420070400);
  CHECK_FALSE(r.messages[0].author.has_value());
}

TEST_CASE("ingest skips a record without timestamp") {
  std::istringstream in(R"({"id":"1","text":"hi"})");
  auto r = ingest(in);
  CHECK(r.messages.empty());
  CHECK(r.skipped == 1);
}

TEST_CASE("ingest counts malformed records and keeps order") {
  std::istringstream in(
      "{\"id\":\"a\",\"text\":\"x\",\"timestamp\":\"2015-01-01T00:00:00Z\"}\n"
      "{not json\n"
      "\n"
      "{\"id\":\"b\",\"text\":\"y\",\"timestamp\":\"2015-01-01T01:00:00+01:00\",\"author\":\"u\"}\n"
      "{\"id\":\"c\",\"text\":\"z\",\"timestamp\":\"2015-01-02T00:00:00Z\"}\n");
  auto r = ingest(in);
  REQUIRE(r.messages.size() == 3);
  CHECK(r.skipped == 1);
  CHECK(r.messages[0].id == "a");
  CHECK(r.messages[1].id == "b");
  CHECK(r.messages[1].timestamp == 1420070400);
  CHECK(r.messages[1].author == std::optional<std::string>("u"));
  CHECK(r.messages[2].id == "c");
}

TEST_CASE("ingest_file on a missing path throws") {
  CHECK_THROWS_AS(ingest_file("/nonexistent/input.jsonl"), std::runtime_error);
}

TEST_CASE("preprocess in pathway mode with the shipped stopword list") {
  auto stop = StopwordList::load(data_dir() / "stopwords.txt");
  auto cfg = PreprocessConfig::pathway_mode(stop);
  CHECK_FALSE(stop.contains("now"));
  CHECK(preprocess("Check http://x.co NOW", cfg) == tokens({"check", "now"}));
  CHECK(preprocess("RT @bob #Obama rocks", cfg) == tokens({"#obama", "rocks"}));
  CHECK(preprocess("", cfg).empty());
}

TEST_CASE("preprocess drops numerals and punctuation, keeps inner apostrophes") {
  auto cfg = PreprocessConfig::pathway_mode(StopwordList({"the"}));
  CHECK(preprocess("The 2 dogs, can't stop!!! 42", cfg) == tokens({"dogs", "can't", "stop"}));
}

TEST_CASE("preprocess in emotion mode keeps stopwords and strips hashtags to words") {
  auto cfg = PreprocessConfig::emotion_mode();
  CHECK(preprocess("I am SO happy #blessed https://t.co/x", cfg) == tokens({"i", "am", "so", "happy", "blessed"}));
}

TEST_CASE("dedupe keeps first occurrences") {
  Batch b;
  b.messages = {msg("1", "a"), msg("2", "a"), msg("3", "b")};
  auto out = dedupe(b);
  REQUIRE(out.messages.size() == 2);
  CHECK(out.messages[0].id == "1");
  CHECK(out.messages[1].id == "3");

  b.messages = {msg("1", "a"), msg("2", "A ")};
  CHECK(dedupe(b).messages.size() == 1);

  b.messages = {msg("1", "a"), msg("2", "b"), msg("3", "c")};
  CHECK(dedupe(b).messages.size() == 3);
}

TEST_CASE("partition by fixed intervals") {
  const Seconds day = 86400;
  SUBCASE("one week interval, day 0 and day 8") {
    std::vector<Message> ms = {msg("0", "x", 0), msg("1", "y", 8 * day)};
    auto bs = partition(ms, 7 * day, 0);
    REQUIRE(bs.size() == 2);
    CHECK(bs[0].messages.size() == 1);
    CHECK(bs[1].messages.size() == 1);
    CHECK(bs[1].start == 7 * day);
    CHECK(bs[1].end == 14 * day);
  }
  SUBCASE("all in one interval") {
    std::vector<Message> ms = {msg("0", "x", 10), msg("1", "y", 20), msg("2", "z", 30)};
    auto bs = partition(ms, day, 0);
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].messages.size() == 3);
  }
  SUBCASE("gaps yield empty batches") {
    std::vector<Message> ms = {msg("0", "x", 0), msg("1", "y", 15 * day)};
    auto bs = partition(ms, 7 * day, 0);
    REQUIRE(bs.size() == 3);
    CHECK(bs[1].messages.empty());
    CHECK(bs[2].index == 2);
  }
  SUBCASE("out of order beyond slack throws") {
    std::vector<Message> ms = {msg("0", "x", 100), msg("1", "y", 50)};
    CHECK_THROWS_AS(partition(ms, day, 0), InputError);
    CHECK_NOTHROW(partition(ms, day, 0, 60));
  }
  SUBCASE("message before origin throws") {
    std::vector<Message> ms = {msg("0", "x", 5)};
    CHECK_THROWS_AS(partition(ms, day, 10), InputError);
  }
}

TEST_CASE("partition is a disjoint cover of the input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Message> ms;
    Instant t = 1000;
    std::uniform_int_distribution<Instant> step(0, 5000);
    for (int k = 0; k < 200; ++k) {
      t += step(rng);
      ms.push_back(msg("m" + std::to_string(k), "x", t));
    }
    auto bs = partition(ms, 3600, 1000);
    std::multiset<std::string> seen;
    for (const auto& b : bs) {
      for (const auto& m : b.messages) {
        CHECK(m.timestamp >= b.start);
        CHECK(m.timestamp < b.end);
        seen.insert(m.id);
      }
    }
    CHECK(seen.size() == ms.size());
    for (const auto& m : ms) CHECK(seen.count(m.id) == 1);
  }
}

TEST_CASE("vocabulary threshold counts documents") {
  std::vector<std::vector<std::string>> docs(1000, tokens({"filler"}));
  for (int k = 0; k < 5; ++k) docs[k].push_back("five");
  for (int k = 0; k < 4; ++k) docs[10 + k].push_back("four");
  docs[20].push_back("once");
  docs[20].push_back("once");

  auto v = build_vocabulary(docs, 0.005);
  CHECK(v.contains("five"));
  CHECK(v.find("five")->df == 5);
  CHECK_FALSE(v.contains("four"));
  CHECK_FALSE(v.contains("once"));

  auto all = build_vocabulary(docs, 0.0);
  CHECK(all.contains("four"));
  CHECK(all.find("once")->df == 1);

  std::set<std::size_t> ids;
  for (const auto& [t, s] : all.terms()) ids.insert(s.id);
  CHECK(ids.size() == all.size());
  CHECK(*ids.rbegin() == all.size() - 1);

  CHECK(build_vocabulary(std::vector<std::vector<std::string>>{}, 0.005).empty());
}

TEST_CASE("lowering the vocabulary threshold never removes a term") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> word(0, 60);
  std::vector<std::vector<std::string>> docs(300);
  for (auto& d : docs) {
    for (int k = 0; k < 6; ++k) d.push_back("w" + std::to_string(word(rng) * word(rng) % 61));
  }
  double prev_threshold = 0.2;
  auto prev = build_vocabulary(docs, prev_threshold);
  for (double th : {0.1, 0.05, 0.01, 0.005, 0.0}) {
    auto cur = build_vocabulary(docs, th);
    for (const auto& [t, s] : prev.terms()) CHECK(cur.contains(t));
    prev = cur;
  }
}

TEST_CASE("vectorize uses natural-log idf and omits zero weights") {
  std::vector<std::vector<std::string>> docs(8, tokens({"common"}));
  for (int k = 0; k < 3; ++k) docs[k].push_back("x");
  for (int k = 0; k < 7; ++k) docs[k].push_back("y");
  auto v = build_vocabulary(docs, 0.0);

  auto vec = vectorize(tokens({"x", "x", "y", "common", "oov"}), v);
  CHECK(vec.get("x") == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(vec.get("x") == std::log(8.0 / 4.0));
  CHECK_FALSE(vec.contains("y"));       // df = N - 1
  CHECK_FALSE(vec.contains("common"));  // df = N, clamped
  CHECK_FALSE(vec.contains("oov"));
  CHECK(vec.size() == 1);
  CHECK(vectorize(tokens({"oov"}), v).empty());

  CHECK(vectorize(tokens({"x", "y"}), v) == vectorize(tokens({"x", "y"}), v));
  for (const auto& e : vec.entries()) CHECK(e.weight > 0.0);
}
