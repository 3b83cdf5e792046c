#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace pathweave {

using Term = std::string;
using TermSet = std::unordered_set<Term>;

/// Non-negative sparse feature vector keyed by term.
///
/// Entries are kept sorted by term and zero weights are never stored, so two
/// vectors with the same content compare equal regardless of how they were
/// built. `vocab_ref` names the batch whose vocabulary produced the vector
/// (-1 when unknown, e.g. for synthetic inputs).
class SparseVector {
 public:
  struct Entry {
    Term term;
    double weight = 0.0;

    bool operator==(const Entry&) const = default;
  };

  SparseVector() = default;

  /// Duplicate terms keep the last weight. Throws std::invalid_argument on a
  /// negative or non-finite weight.
  explicit SparseVector(std::vector<Entry> entries, std::int64_t vocab_ref = -1);

  double get(std::string_view term) const;
  bool contains(std::string_view term) const;

  /// Setting zero erases the entry.
  void set(const Term& term, double weight);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double norm() const;

  std::int64_t vocab_ref() const { return vocab_ref_; }
  void set_vocab_ref(std::int64_t ref) { vocab_ref_ = ref; }

  bool operator==(const SparseVector& other) const { return entries_ == other.entries_; }

 private:
  std::vector<Entry> entries_;
  std::int64_t vocab_ref_ = -1;
};

double dot(const SparseVector& a, const SparseVector& b);

/// Element-wise maximum; terms absent from one side count as zero.
SparseVector elementwise_max(const SparseVector& a, const SparseVector& b);

/// Keeps only the entries whose term is in `keep`.
SparseVector restrict_to(const SparseVector& v, const TermSet& keep);

TermSet make_term_set(const std::vector<Term>& terms);

/// Terms contained in both sets.
TermSet intersect(const TermSet& a, const TermSet& b);

}  // namespace pathweave
