#include "pathweave/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace pathweave {

std::size_t CoherenceInput::co_freq(const Term& a, const Term& b) const {
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = co_doc_freq.find(key);
  return it == co_doc_freq.end() ? 0 : it->second;
}

double coherence(const CoherenceInput& input) {
  const auto& v = input.top_terms;
  double c = 0.0;
  for (std::size_t m = 1; m < v.size(); ++m) {
    for (std::size_t l = 0; l < m; ++l) {
      auto it = input.doc_freq.find(v[l]);
      std::size_t dl = it == input.doc_freq.end() ? 0 : it->second;
      if (dl == 0) throw std::domain_error("coherence: term '" + v[l] + "' occurs in no document");
      c += std::log((static_cast<double>(input.co_freq(v[m], v[l])) + 1.0) / static_cast<double>(dl));
    }
  }
  return c;
}

CoherenceInput collect_frequencies(std::span<const std::vector<std::string>> docs, std::span<const Term> terms) {
  CoherenceInput out;
  out.top_terms.assign(terms.begin(), terms.end());
  std::unordered_map<Term, std::size_t> slot;
  for (const auto& t : terms) {
    slot.emplace(t, slot.size());
    out.doc_freq[t] = 0;
  }
  const std::size_t k = slot.size();
  std::vector<std::size_t> df(k, 0);
  std::vector<std::size_t> co(k * k, 0);
  std::vector<char> present(k);
  std::vector<std::size_t> hit;
  for (const auto& doc : docs) {
    std::fill(present.begin(), present.end(), 0);
    hit.clear();
    for (const auto& tok : doc) {
      auto it = slot.find(tok);
      if (it == slot.end() || present[it->second]) continue;
      present[it->second] = 1;
      hit.push_back(it->second);
    }
    for (std::size_t a : hit) {
      ++df[a];
      for (std::size_t b : hit) {
        if (a < b) ++co[a * k + b];
      }
    }
  }
  std::vector<Term> by_slot(k);
  for (const auto& [t, s] : slot) by_slot[s] = t;
  for (std::size_t a = 0; a < k; ++a) {
    out.doc_freq[by_slot[a]] = df[a];
    for (std::size_t b = a + 1; b < k; ++b) {
      const Term& x = by_slot[a];
      const Term& y = by_slot[b];
      out.co_doc_freq[x < y ? std::make_pair(x, y) : std::make_pair(y, x)] = co[a * k + b];
    }
  }
  return out;
}

std::map<Term, std::size_t> term_frequencies(std::span<const std::vector<std::string>> docs) {
  std::map<Term, std::size_t> freqs;
  for (const auto& doc : docs) {
    for (const auto& t : doc) ++freqs[t];
  }
  return freqs;
}

std::vector<Term> top_terms(const std::map<Term, std::size_t>& freqs, std::size_t m) {
  std::vector<std::pair<Term, std::size_t>> items(freqs.begin(), freqs.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (items.size() > m) items.resize(m);
  std::vector<Term> out;
  out.reserve(items.size());
  for (auto& [t, c] : items) out.push_back(std::move(t));
  return out;
}

}  // namespace pathweave
