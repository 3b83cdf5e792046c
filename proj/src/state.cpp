#include "pathweave/state.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "pathweave/errors.hpp"

namespace pathweave {

using nlohmann::json;

namespace {

json vector_to_json(const SparseVector& v) {
  json entries = json::array();
  for (const auto& e : v.entries()) entries.push_back(json::array({e.term, e.weight}));
  return {{"vocab_ref", v.vocab_ref()}, {"entries", entries}};
}

SparseVector vector_from_json(const json& j) {
  std::vector<SparseVector::Entry> entries;
  for (const auto& e : j.at("entries")) entries.push_back({e.at(0).get<std::string>(), e.at(1).get<double>()});
  return SparseVector(std::move(entries), j.at("vocab_ref").get<std::int64_t>());
}

json pos_to_json(GridPos p) { return json::array({p.row, p.col}); }
GridPos pos_from_json(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

json rep_to_json(const ClusterRep& r) {
  json pooled = json::array();
  for (const auto& p : r.pooled) pooled.push_back(pos_to_json(p));
  return {{"layer", r.layer},          {"pathway_id", r.pathway_id}, {"vector", vector_to_json(r.vector)},
          {"node", pos_to_json(r.node)}, {"hits", r.hits},             {"pooled", pooled}};
}

ClusterRep rep_from_json(const json& j) {
  ClusterRep r;
  r.layer = j.at("layer").get<std::size_t>();
  r.pathway_id = j.at("pathway_id").get<std::string>();
  r.vector = vector_from_json(j.at("vector"));
  r.node = pos_from_json(j.at("node"));
  r.hits = j.at("hits").get<std::size_t>();
  for (const auto& p : j.at("pooled")) r.pooled.push_back(pos_from_json(p));
  return r;
}

json segment_to_json(const TopicSegment& s) {
  return {{"batch_index", s.batch_index},
          {"message_ids", s.message_ids},
          {"volume_proportion", s.volume_proportion},
          {"avg_pos", s.avg_pos},
          {"avg_neg", s.avg_neg},
          {"term_freqs", s.term_freqs}};
}

TopicSegment segment_from_json(const json& j, const std::string& pathway_id) {
  TopicSegment s;
  s.pathway_id = pathway_id;
  s.batch_index = j.at("batch_index").get<std::size_t>();
  s.message_ids = j.at("message_ids").get<std::vector<std::string>>();
  s.volume_proportion = j.at("volume_proportion").get<double>();
  s.avg_pos = j.at("avg_pos").get<double>();
  s.avg_neg = j.at("avg_neg").get<double>();
  s.term_freqs = j.at("term_freqs").get<std::map<Term, std::size_t>>();
  return s;
}

json optional_to_json(const auto& v) { return v ? json(*v) : json(nullptr); }

template <typename T>
std::optional<T> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

std::string checksum_line(std::string_view body) {
  auto crc = crc32(0L, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size()));
  char buf[32];
  std::snprintf(buf, sizeof buf, "crc32:%08lx\n", static_cast<unsigned long>(crc));
  return buf;
}

}  // namespace

std::string serialize_state(const EngineState& state) {
  json live = json::array();
  for (const auto& p : state.layer.live) {
    live.push_back(
        {{"id", p.id}, {"birth_layer", p.birth_layer}, {"dormant", p.dormant}, {"rep", rep_to_json(p.rep)}});
  }
  json pathways = json::array();
  for (const auto& p : state.pathways) {
    json segs = json::array();
    for (const auto& s : p.segments) segs.push_back(segment_to_json(s));
    pathways.push_back({{"pathway_id", p.pathway_id},
                        {"birth_layer", p.birth_layer},
                        {"parent", optional_to_json(p.parent)},
                        {"segments", segs}});
  }
  json docs = json::array();
  for (const auto& d : state.documents) {
    docs.push_back(json::array({d.message_id, d.batch_index, d.pathway_id, d.tokens}));
  }
  json root = {{"format_version", state.format_version},
               {"origin", optional_to_json(state.origin)},
               {"interval", state.interval},
               {"last_batch", optional_to_json(state.last_batch)},
               {"skipped_records", state.skipped_records},
               {"layer",
                {{"next_serial", state.layer.next_serial},
                 {"last_layer", optional_to_json(state.layer.last_layer)},
                 {"live", live}}},
               {"pathways", pathways},
               {"batch_sizes", state.batch_sizes},
               {"documents", docs}};
  std::string body = root.dump(1);
  body.push_back('\n');
  return body + checksum_line(body);
}

EngineState parse_state(std::string_view text) {
  if (text.empty() || text.back() != '\n') throw StateError("state file is truncated");
  auto marker = text.rfind("\ncrc32:");
  if (marker == std::string_view::npos) throw StateError("state file has no checksum line (truncated?)");
  std::string_view body = text.substr(0, marker + 1);
  if (text.substr(marker + 1) != checksum_line(body)) throw StateError("state file checksum mismatch");

  json root = json::parse(body, nullptr, false);
  if (root.is_discarded() || !root.is_object()) throw StateError("state file is not a JSON object");
  try {
    EngineState st;
    st.format_version = root.at("format_version").get<int>();
    if (st.format_version != kStateFormatVersion) {
      throw StateError("unsupported state format_version " + std::to_string(st.format_version) + " (expected " +
                       std::to_string(kStateFormatVersion) + ")");
    }
    st.origin = optional_from_json<Instant>(root.at("origin"));
    st.interval = root.at("interval").get<Seconds>();
    st.last_batch = optional_from_json<std::size_t>(root.at("last_batch"));
    st.skipped_records = root.at("skipped_records").get<std::size_t>();
    const json& layer = root.at("layer");
    st.layer.next_serial = layer.at("next_serial").get<std::uint64_t>();
    st.layer.last_layer = optional_from_json<std::size_t>(layer.at("last_layer"));
    for (const auto& p : layer.at("live")) {
      st.layer.live.push_back(LivePathway{p.at("id").get<std::string>(), p.at("birth_layer").get<std::size_t>(),
                                          rep_from_json(p.at("rep")), p.at("dormant").get<std::size_t>()});
    }
    for (const auto& p : root.at("pathways")) {
      TopicPathway tp;
      tp.pathway_id = p.at("pathway_id").get<std::string>();
      tp.birth_layer = p.at("birth_layer").get<std::size_t>();
      tp.parent = optional_from_json<std::string>(p.at("parent"));
      for (const auto& s : p.at("segments")) tp.segments.push_back(segment_from_json(s, tp.pathway_id));
      st.pathways.push_back(std::move(tp));
    }
    st.batch_sizes = root.at("batch_sizes").get<std::vector<std::size_t>>();
    for (const auto& d : root.at("documents")) {
      st.documents.push_back(DocumentRecord{d.at(0).get<std::string>(), d.at(1).get<std::size_t>(),
                                            d.at(2).get<std::string>(), d.at(3).get<std::vector<std::string>>()});
    }
    return st;
  } catch (const json::exception& e) {
    throw StateError(std::string("malformed state file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw StateError(std::string("malformed state file: ") + e.what());
  }
}

void save_state(const std::filesystem::path& path, const EngineState& state) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write state file: " + tmp);
    out << serialize_state(state);
    if (!out) throw std::runtime_error("error writing state file: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

EngineState load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateError("cannot open state file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

}  // namespace pathweave
