#include "pathweave/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathweave {

namespace {

bool term_less(const SparseVector::Entry& e, std::string_view term) { return e.term < term; }

}  // namespace

SparseVector::SparseVector(std::vector<Entry> entries, std::int64_t vocab_ref) : vocab_ref_(vocab_ref) {
  for (const auto& e : entries) {
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw std::invalid_argument("sparse vector weight must be finite and non-negative: " + e.term);
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.term < b.term; });
  entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().term == e.term) {
      entries_.back().weight = e.weight;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.weight == 0.0; });
}

double SparseVector::get(std::string_view term) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term, term_less);
  return (it != entries_.end() && it->term == term) ? it->weight : 0.0;
}

bool SparseVector::contains(std::string_view term) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term, term_less);
  return it != entries_.end() && it->term == term;
}

void SparseVector::set(const Term& term, double weight) {
  if (!std::isfinite(weight) || weight < 0.0) {
    throw std::invalid_argument("sparse vector weight must be finite and non-negative: " + term);
  }
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::string_view(term), term_less);
  bool found = it != entries_.end() && it->term == term;
  if (weight == 0.0) {
    if (found) entries_.erase(it);
    return;
  }
  if (found) {
    it->weight = weight;
  } else {
    entries_.insert(it, Entry{term, weight});
  }
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.weight * e.weight;
  return std::sqrt(sum);
}

double dot(const SparseVector& a, const SparseVector& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    int c = x[i].term.compare(y[j].term);
    if (c == 0) {
      sum += x[i].weight * y[j].weight;
      ++i;
      ++j;
    } else if (c < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

SparseVector elementwise_max(const SparseVector& a, const SparseVector& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::vector<SparseVector::Entry> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].term < y[j].term)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].term < x[i].term) {
      out.push_back(y[j++]);
    } else {
      out.push_back({x[i].term, std::max(x[i].weight, y[j].weight)});
      ++i;
      ++j;
    }
  }
  return SparseVector(std::move(out), a.vocab_ref());
}

SparseVector restrict_to(const SparseVector& v, const TermSet& keep) {
  std::vector<SparseVector::Entry> out;
  for (const auto& e : v.entries()) {
    if (keep.contains(e.term)) out.push_back(e);
  }
  return SparseVector(std::move(out), v.vocab_ref());
}

TermSet make_term_set(const std::vector<Term>& terms) { return TermSet(terms.begin(), terms.end()); }

TermSet intersect(const TermSet& a, const TermSet& b) {
  const TermSet& small = a.size() <= b.size() ? a : b;
  const TermSet& large = a.size() <= b.size() ? b : a;
  TermSet out;
  for (const auto& t : small) {
    if (large.contains(t)) out.insert(t);
  }
  return out;
}

}  // namespace pathweave
