#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathweave/sparse_vector.hpp"

namespace pathweave {

/// Top terms of a topic with the document counts needed to score them.
/// Pair keys are ordered (smaller term first).
struct CoherenceInput {
  std::vector<Term> top_terms;
  std::map<Term, std::size_t> doc_freq;
  std::map<std::pair<Term, Term>, std::size_t> co_doc_freq;

  std::size_t co_freq(const Term& a, const Term& b) const;
};

/// Sum over ordered pairs (l < m) of ln((D(v_m, v_l) + 1) / D(v_l)).
/// Throws std::domain_error when a conditioning term has D = 0.
double coherence(const CoherenceInput& input);

/// Document and pairwise co-document frequencies of `terms`, counting each
/// document once per distinct term.
CoherenceInput collect_frequencies(std::span<const std::vector<std::string>> docs, std::span<const Term> terms);

/// Raw token counts over all documents.
std::map<Term, std::size_t> term_frequencies(std::span<const std::vector<std::string>> docs);

/// The `m` most frequent terms, ties broken lexicographically.
std::vector<Term> top_terms(const std::map<Term, std::size_t>& freqs, std::size_t m);

}  // namespace pathweave
