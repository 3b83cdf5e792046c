#include "pathweave/similarity.hpp"

#include <cmath>

namespace pathweave {

double similarity(const SparseVector& a, const SparseVector& b) {
  double d = dot(a, b);
  if (d == 0.0) return 0.0;
  return cosine(d, a.norm(), b.norm());
}

double similarity(const SparseVector& a, const SparseVector& b, const TermSet& shared) {
  if (shared.empty()) return 0.0;
  const auto& x = a.entries();
  const auto& y = b.entries();
  double sum = 0.0;
  double na = 0.0;
  double nb = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].term < y[j].term)) {
      if (shared.contains(x[i].term)) na += x[i].weight * x[i].weight;
      ++i;
    } else if (i == x.size() || y[j].term < x[i].term) {
      if (shared.contains(y[j].term)) nb += y[j].weight * y[j].weight;
      ++j;
    } else {
      if (shared.contains(x[i].term)) {
        na += x[i].weight * x[i].weight;
        nb += y[j].weight * y[j].weight;
        sum += x[i].weight * y[j].weight;
      }
      ++i;
      ++j;
    }
  }
  if (sum == 0.0) return 0.0;
  return cosine(sum, std::sqrt(na), std::sqrt(nb));
}

}  // namespace pathweave
