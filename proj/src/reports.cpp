#include "pathweave/reports.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

#include "pathweave/format.hpp"
#include "pathweave/metrics.hpp"

namespace pathweave {

using nlohmann::json;

void write_pathway_report(std::ostream& out, const EngineState& state, std::size_t top_n) {
  std::vector<const TopicSegment*> segs;
  for (const auto& p : state.pathways) {
    for (const auto& s : p.segments) segs.push_back(&s);
  }
  std::stable_sort(segs.begin(), segs.end(), [](const TopicSegment* a, const TopicSegment* b) {
    if (a->batch_index != b->batch_index) return a->batch_index < b->batch_index;
    return a->pathway_id < b->pathway_id;
  });
  for (const auto* s : segs) {
    json line = {{"pathway_id", s->pathway_id},
                 {"batch_index", s->batch_index},
                 {"n_messages", s->message_ids.size()},
                 {"volume_proportion", s->volume_proportion},
                 {"top_terms", top_terms(s->term_freqs, top_n)},
                 {"avg_pos", s->avg_pos},
                 {"avg_neg", s->avg_neg}};
    out << line.dump() << '\n';
  }
}

void write_event_report(std::ostream& out, std::span<const EventRecord> events) {
  for (const auto& e : events) {
    if (!e.flagged) continue;
    json line = {{"pathway_id", e.pathway_id}, {"batch_index", e.batch_index}, {"i_v", e.i_v},
                 {"i_ps", e.i_ps},             {"i_ns", e.i_ns},               {"score", e.score},
                 {"trigger_terms", e.trigger_terms}};
    out << line.dump() << '\n';
  }
}

std::vector<CoherenceRow> coherence_report(const EngineState& state, std::size_t m, CoherenceScope scope) {
  std::map<std::string, std::vector<std::vector<std::string>>> by_pathway;
  std::vector<std::vector<std::string>> all;
  all.reserve(state.documents.size());
  for (const auto& d : state.documents) {
    all.push_back(d.tokens);
    if (!d.pathway_id.empty()) by_pathway[d.pathway_id].push_back(d.tokens);
  }

  std::vector<CoherenceRow> rows;
  for (const auto& [id, docs] : by_pathway) {
    auto terms = top_terms(term_frequencies(docs), m);
    const auto& counted = scope == CoherenceScope::pathway ? docs : all;
    rows.push_back(CoherenceRow{id, m, coherence(collect_frequencies(counted, terms))});
  }
  auto terms = top_terms(term_frequencies(all), m);
  rows.push_back(CoherenceRow{"baseline", m, coherence(collect_frequencies(all, terms))});
  return rows;
}

void write_coherence_csv(std::ostream& out, std::span<const CoherenceRow> rows) {
  out << "pathway_id,M,coherence\n";
  for (const auto& r : rows) out << r.pathway_id << ',' << r.m << ',' << format_double(r.coherence) << '\n';
}

void write_emotion_header(std::ostream& out) {
  out << "id";
  for (auto name : emotion_names()) out << ',' << name;
  out << ",token_count\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q.push_back('"');
    q.push_back(c);
  }
  q.push_back('"');
  return q;
}

}  // namespace

void write_emotion_row(std::ostream& out, const std::string& id, const EmotionVector& ev) {
  out << csv_field(id);
  for (double v : ev.e) out << ',' << format_double(v);
  out << ',' << ev.token_count << '\n';
}

void write_timeline_csv(std::ostream& out, std::span<const TimelineBin> bins) {
  out << "bin_start";
  for (auto name : emotion_names()) out << ',' << name;
  out << ",n_posts\n";
  for (const auto& b : bins) {
    out << format_rfc3339(b.start);
    for (std::size_t i = 0; i < kEmotionCount; ++i) out << ',' << (b.mean ? format_double((*b.mean)[i]) : "NA");
    out << ',' << b.n_posts << '\n';
  }
}

void write_reports(const std::filesystem::path& out_dir, const EngineState& state, const EngineConfig& cfg) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "pathways.jsonl", std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (out_dir / "pathways.jsonl").string());
    write_pathway_report(out, state);
  }
  {
    auto events = detect(state.pathways, cfg.events);
    std::ofstream out(out_dir / "events.jsonl", std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (out_dir / "events.jsonl").string());
    write_event_report(out, events);
  }
}

}  // namespace pathweave
