#pragma once

#include "pathweave/sparse_vector.hpp"

namespace pathweave {

/// Cosine similarity over all terms. Returns 0 when either vector is zero.
double similarity(const SparseVector& a, const SparseVector& b);

/// Cosine similarity restricted to the terms in `shared` (the intersection of
/// the vocabularies that produced `a` and `b`). Both dot product and norms are
/// taken over the restricted terms only; an empty restriction yields 0.
double similarity(const SparseVector& a, const SparseVector& b, const TermSet& shared);

/// Cosine with precomputed norms, for hot loops.
inline double cosine(double dot_product, double norm_a, double norm_b) {
  if (norm_a <= 0.0 || norm_b <= 0.0) return 0.0;
  return dot_product / (norm_a * norm_b);
}

}  // namespace pathweave
